import itertools
import pickle
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from lamanbounds.algebra import (
    DEFAULT_PRIME,
    FLEXIBLE,
    GroebnerStats,
    PolynomialRing,
    PrimeField,
    count_standard_monomials,
    default_prime,
    dump_system,
    groebner_basis,
    is_groebner,
    is_reduced,
    normal_form,
    parse_system,
    quotient_dimension,
    s_polynomial,
)
from lamanbounds.algebra.field import PRIME_ENV_VAR

F7 = PrimeField(7, floor=2)
F11 = PrimeField(11, floor=2)


def ring(n, field=F7):
    return PolynomialRing(n, field)


def random_poly(R, rng, terms=4, max_deg=2):
    d = {}
    for _ in range(terms):
        exps = tuple(rng.randint(0, max_deg) for _ in range(R.nvars))
        d[exps] = rng.randrange(R.p)
    return R.from_dict(d)


def random_linear(R, rng):
    d = {tuple(int(i == j) for j in range(R.nvars)): rng.randrange(R.p) for i in range(R.nvars)}
    d[(0,) * R.nvars] = rng.randrange(R.p)
    return R.from_dict(d)


def point_count(polys, R):
    return sum(
        all(f.evaluate(pt) == 0 for f in polys)
        for pt in itertools.product(range(R.p), repeat=R.nvars)
    )


def field_equations(R):
    return [R.var(i) ** R.p - R.var(i) for i in range(R.nvars)]


# -- field ------------------------------------------------------------------------


def test_default_prime_is_prime_and_configurable(monkeypatch):
    assert sympy.isprime(DEFAULT_PRIME) and DEFAULT_PRIME < 2**31
    monkeypatch.setenv(PRIME_ENV_VAR, "1000003")
    assert default_prime() == 1000003


def test_field_validation():
    with pytest.raises(ValueError):
        PrimeField(15, floor=2)
    with pytest.raises(ValueError):
        PrimeField(101)  # below the default floor
    assert PrimeField(101, floor=50).p == 101


def test_field_square_roots(rng):
    F = PrimeField(1000003, floor=2)
    for _ in range(50):
        a = F.random_nonzero(rng)
        r = F.sqrt(a)
        assert (r is not None) == F.is_square(a)
        if r is not None:
            assert r * r % F.p == a
        x, y = F.sum_of_two_squares(a, rng)
        assert (x * x + y * y) % F.p == a
    assert F.inv(5) * 5 % F.p == 1


# -- polynomials --------------------------------------------------------------------


def test_grevlex_order():
    R = ring(3)
    x, y, z = R.gens()
    # x > y > z; degree first; then reverse lex on the last variable
    assert (x**2 + y * z).lead_exponents == (2, 0, 0)
    assert (x * z + y**2).lead_exponents == (0, 2, 0)
    assert (x + y * y).lead_exponents == (0, 2, 0)


@given(st.integers(0, 2**32 - 1))
def test_arithmetic_matches_evaluation(seed):
    r = random.Random(seed)
    R = ring(3, F11)
    f, g = random_poly(R, r), random_poly(R, r)
    for pt in [tuple(r.randrange(11) for _ in range(3)) for _ in range(5)]:
        assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt) % 11
        assert (f + g).evaluate(pt) == (f.evaluate(pt) + g.evaluate(pt)) % 11
        assert (f - g).evaluate(pt) == (f.evaluate(pt) - g.evaluate(pt)) % 11
    assert (f * g) == (g * f)


def test_exponent_overflow_raises():
    R = ring(1)
    x = R.var(0)
    with pytest.raises(OverflowError):
        x**200


@given(st.integers(0, 2**32 - 1))
def test_dump_parse_roundtrip(seed):
    r = random.Random(seed)
    R = ring(4, F11)
    polys = [random_poly(R, r) for _ in range(3)]
    assert parse_system(R, dump_system(polys)) == polys


def test_dump_format():
    R = ring(2)
    x, y = R.gens()
    assert (3 * x**2 * y + 1).dump() == "3*x1^2*x2^1 + 1"
    assert R.zero().dump() == "0"


# -- Groebner bases -------------------------------------------------------------------


def test_basis_examples():
    R = ring(2)
    x, y = R.gens()
    assert groebner_basis([x * x - 1]) == [x * x - 1]
    assert groebner_basis([x + y, y * y - 1]) == [x + y, y * y - 1]
    assert groebner_basis([x - 1, x - 2]) == [R.one()]
    assert groebner_basis([], R) == []


def test_quotient_dimension_examples():
    R = ring(2)
    x, y = R.gens()
    R1 = ring(1)
    assert quotient_dimension([R1.var(0) ** 2 - 1]) == 2
    assert quotient_dimension(groebner_basis([x**2, x * y, y**3])) == 4
    assert quotient_dimension([R.one()]) == 0
    assert quotient_dimension(groebner_basis([x * y])) is FLEXIBLE
    assert count_standard_monomials([(2, 0), (1, 1), (0, 3)], 2) == 4


def test_flexible_marker_is_a_singleton():
    assert pickle.loads(pickle.dumps(FLEXIBLE)) is FLEXIBLE
    assert str(FLEXIBLE) == "flexible"


def _sympy_basis(polys, R):
    syms = sympy.symbols(f"x1:{R.nvars + 1}")
    exprs = [sum(c * sympy.prod(s**e for s, e in zip(syms, ex)) for ex, c in f.items()) for f in polys]
    gb = sympy.groebner(exprs, *syms, modulus=R.p, order="grevlex")
    out = []
    for g in gb.exprs:
        pg = sympy.Poly(g, *syms, modulus=R.p)
        out.append(R.from_dict({m: int(c) % R.p for m, c in pg.terms()}).monic())
    return out


@given(st.integers(0, 2**32 - 1), st.integers(2, 3), st.integers(1, 4))
def test_reduced_basis_matches_sympy(seed, nvars, ngens):
    r = random.Random(seed)
    R = ring(nvars, F11)
    polys = [random_poly(R, r, terms=3) for _ in range(ngens)]
    polys = [f for f in polys if f]
    if polys:
        assert set(groebner_basis(polys, R)) == set(_sympy_basis(polys, R))


@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(1, 4))
def test_basis_properties(seed, nvars, ngens):
    r = random.Random(seed)
    R = ring(nvars, F11)
    polys = [random_poly(R, r) for _ in range(ngens)]
    stats = GroebnerStats()
    basis = groebner_basis(polys, R, stats)
    assert is_groebner(basis)
    assert is_reduced(basis)
    # ideal membership: every generator reduces to zero
    for f in polys:
        assert not normal_form(f, basis)
    # S-polynomials reduce to zero
    for f, g in itertools.combinations(basis, 2):
        assert not normal_form(s_polynomial(f, g), basis)
    assert stats.basis_size == len(basis)
    # determinism
    again = groebner_basis(polys, R)
    assert [g.dump() for g in again] == [g.dump() for g in basis]


def test_counts_random_systems_against_exhaustive_evaluation():
    """Products of linear forms plus field equations: staircase size = point count."""
    r = random.Random(2024)
    for trial in range(100):
        F = F7 if trial % 2 else PrimeField(5, floor=2)
        R = ring(r.randint(1, 3), F)
        polys = []
        for _ in range(r.randint(1, 3)):
            f = R.one()
            for _ in range(r.randint(1, 2)):
                f = f * random_linear(R, r)
            polys.append(f)
        basis = groebner_basis(polys + field_equations(R), R)
        assert is_groebner(basis)
        assert quotient_dimension(basis) == point_count(polys, R)


def test_triangular_systems_count_roots():
    # x1 has 3 distinct roots, x2 is a function of x1, so 3 solutions over the closure
    R = ring(2, F11)
    x, y = R.gens()
    polys = [(x - 1) * (x - 2) * (x - 5), y - x * x]
    basis = groebner_basis(polys)
    assert quotient_dimension(basis) == 3 == point_count(polys, R)
