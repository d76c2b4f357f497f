import csv
import io
from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lamanbounds import data
from lamanbounds.bounds import (
    CSV_COLUMNS,
    BoundSpec,
    caterpillar_bound,
    evaluate,
    fan_bound,
    generalized_fan_bound,
    generalized_fan_bound_3d,
    growth_rate,
    growth_table,
    plot_rates,
    rounded_rate,
    theorem_bound,
    theorem_spec,
    to_csv,
)
from lamanbounds.graph import GraphCode


def eq1(V, L, n):
    return 2 ** ((n - 2) % (V - 2)) * L ** ((n - 2) // (V - 2))


def eq2(V, L, n):
    # written with integer division to keep it independent of the rational code path
    k = (n - 3) // (V - 3)
    return 2 ** ((n - 3) % (V - 3)) * 2 * L**k // 2**k


def test_caterpillar_examples():
    assert caterpillar_bound(BoundSpec(2, 6, 24, 2, 1, 6)).value == 24
    assert caterpillar_bound(BoundSpec(2, 6, 24, 2, 1, 10)).value == 576
    assert growth_rate(BoundSpec(2, 6, 24, 2, 1, 6), 5) == Decimal("2.21336")
    with pytest.raises(ValueError):
        caterpillar_bound(BoundSpec(2, 6, 24, 2, 1, 1))


def test_fan_examples():
    spec = BoundSpec(2, 6, 24, 3, 2, 9, base_code=GraphCode(6, 7916))
    assert fan_bound(spec).value == 288
    assert growth_rate(spec, 5) == Decimal("2.28943")
    code, count = data.MAX_2D[12]
    no_triangle = BoundSpec(2, 12, count, 3, 2, 20, base_code=GraphCode(12, code))
    with pytest.raises(ValueError, match="no triangle"):
        fan_bound(no_triangle)


def test_generalized_fan_examples():
    code, count = data.FAN_31[7]
    spec = BoundSpec(2, 7, count, 4, 4, 7, base_code=GraphCode(7, code), glue_code=GraphCode(4, 31))
    assert growth_rate(spec, 5) == Decimal("2.28943")
    assert generalized_fan_bound(spec).value == 48
    with pytest.raises(ValueError, match="not a subgraph"):
        generalized_fan_bound(BoundSpec(2, 6, 24, 4, 4, 8, base_code=GraphCode(6, 7916),
                                        glue_code=GraphCode(4, 31)))


def test_3d_examples():
    assert growth_rate(BoundSpec(3, 6, 16, 3, 1, 6), 5) == Decimal("2.51984")
    spec = BoundSpec(3, 10, 2560, 3, 1, 10)
    assert generalized_fan_bound_3d(spec).value == 2560
    assert growth_rate(spec, 5) == Decimal("3.06825")
    assert growth_rate(BoundSpec(3, 10, 1664, 4, 2, 10), 5) == Decimal("3.06681")
    with pytest.raises(ValueError):
        generalized_fan_bound_3d(BoundSpec(2, 6, 24, 3, 2, 6))


def test_specializations_are_exact():
    for V, L in [(6, 24), (7, 56), (8, 136), (18, 1953816), (12, 6180)]:
        for n in range(2, 61):
            assert generalized_fan_bound(BoundSpec(2, V, L, 2, 1, n)).value == eq1(V, L, n)
            assert caterpillar_bound(BoundSpec(2, V, L, 2, 1, n)).value == eq1(V, L, n)
            if n >= 3:
                g = generalized_fan_bound(BoundSpec(2, V, L, 3, 2, n))
                assert g.value == fan_bound(BoundSpec(2, V, L, 3, 2, n)).value == eq2(V, L, n)
                assert not g.fractional


def test_theorems():
    assert theorem_bound(2, 18) == 1953816
    assert theorem_bound(3, 10) == 2560
    assert theorem_bound(2, 3) == 2
    for n in range(3, 60):
        assert theorem_bound(2, n) == 2 * 2 ** ((n - 3) % 15) * 976908 ** ((n - 3) // 15)
        assert theorem_bound(3, n) == 2 ** ((n - 3) % 7) * 2560 ** ((n - 3) // 7)
    assert growth_rate(theorem_spec(2, 18), 5) == data.THEOREM_2D_RATE
    assert growth_rate(theorem_spec(3, 10), 5) == data.THEOREM_3D_RATE
    with pytest.raises(ValueError):
        theorem_bound(2, 2)


@given(st.integers(4, 20), st.integers(0, 10**6), st.integers(2, 4), st.integers(3, 80))
def test_monotone_and_doubling(V, extra, W, n):
    # every Laman base has at least 2^(V-2) realizations; below that, padding can beat a copy
    LH = {2: 1, 3: 2, 4: 4}[W]
    L = 2 ** (V - 2) + 2 * extra
    if V <= W or n < W:
        return
    spec = BoundSpec(2, V, L, W, LH, n)
    a, b = evaluate(spec), evaluate(spec.at(n + 1))
    assert b.value >= a.value >= 1
    if b.padding == a.padding + 1:
        assert b.recompute() == 2 * a.recompute()
    assert a.recompute().numerator // a.recompute().denominator == a.value


def test_fractional_results_are_flagged():
    r = generalized_fan_bound(BoundSpec(2, 7, 49, 4, 4, 10))
    assert r.fractional and r.value == int(r.recompute())
    assert "equally sized" in r.note


def test_invalid_specs():
    with pytest.raises(ValueError):
        BoundSpec(2, 3, 2, 3, 2, 5)
    with pytest.raises(ValueError):
        BoundSpec(2, 6, 1, 3, 2, 6)
    with pytest.raises(ValueError):
        BoundSpec(4, 6, 24, 3, 2, 6)


def test_rate_rounding_is_half_up():
    # 2^(1/1) exactly, and a value whose sixth digit is 5
    assert rounded_rate(4, 2, 5, 4) == Decimal("2.00000")
    assert rounded_rate(24, 1, 6, 2, places=2) == Decimal("2.21")


def test_table_4_columns_for_small_n():
    cat = {n: rounded_rate(c, 1, n, 2) for n, (_, c) in data.MAX_2D.items()}
    fan = {n: rounded_rate(c, 2, n, 3) for n, (_, c) in data.MAX_2D.items() if n < 12}
    for n in range(6, 13):
        assert cat[n] == data.RATES_2D["caterpillar"][n]
    for n in range(6, 12):
        assert fan[n] == data.RATES_2D["fan-T"][n]


def test_growth_table_csv(tmp_path):
    spec = BoundSpec(2, 6, 24, 3, 2, 6, construction="fan", base_code=GraphCode(6, 7916),
                     glue_code=GraphCode(3, 7))
    rows = growth_table([spec], range(6, 11))
    assert [r.bound for r in rows] == [24, 48, 96, 288, 576]
    text = to_csv(rows)
    parsed = list(csv.reader(io.StringIO(text)))
    assert tuple(parsed[0]) == CSV_COLUMNS
    assert parsed[1] == ["6", "fan", "6:7916", "3:7", "24", "2.28943"]
    out = tmp_path / "rates.png"
    plot_rates(rows, str(out))
    assert out.stat().st_size > 0
