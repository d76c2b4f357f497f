import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import lamanbounds.realizations as rz
from lamanbounds.algebra import FLEXIBLE, PrimeField, groebner_basis, quotient_dimension
from lamanbounds.graph import Graph, complete_graph, decode, path_graph, three_prism
from lamanbounds.realizations import (
    CountConfig,
    EdgeLengthAssignment,
    RunRecord,
    build_system_2d,
    build_system_3d,
    choose_triangle,
    count_many,
    count_realizations,
    preprocess,
    raw_count,
    sample_lengths,
)

from conftest import laman_graphs, random_henneberg

FIELD = PrimeField()
NO_PRE = CountConfig(preprocess=False)


def test_lengths_are_nonzero_residues():
    with pytest.raises(ValueError):
        EdgeLengthAssignment({(0, 1): 0}, 7)
    lam = EdgeLengthAssignment.random(three_prism(), FIELD, seed=3)
    assert all(0 < v < FIELD.p for v in lam.values.values())
    assert lam[(1, 0)] == lam[(0, 1)]
    assert EdgeLengthAssignment.random(three_prism(), FIELD, 3) == lam


def test_pinned_lengths_are_realizable():
    g = decode(16350, 6)
    lam = sample_lengths(g, 3, FIELD, seed=11)
    a, b, c = choose_triangle(g)[0]
    sysm = build_system_3d(g, lam, FIELD)
    pb, pc = sysm.pinned[b], sysm.pinned[c]
    p = FIELD.p
    assert pb[1] == pb[2] == 0 and pc[2] == 0
    assert sum(x * x for x in pb) % p == lam[(a, b)]
    assert sum(x * x for x in pc) % p == lam[(a, c)]
    assert sum((x - y) ** 2 for x, y in zip(pb, pc)) % p == lam[(b, c)]


def test_system_shapes():
    lam = sample_lengths(complete_graph(4), 3, FIELD, 0)
    s = build_system_3d(complete_graph(4), lam, FIELD)
    assert (s.nvars, len(s.equations)) == (3, 3)
    oct_ = decode(16350, 6)
    s = build_system_3d(oct_, sample_lengths(oct_, 3, FIELD, 0), FIELD)
    assert (s.nvars, len(s.equations)) == (9, 9)
    prism = three_prism()
    s = build_system_2d(prism, sample_lengths(prism, 2, FIELD, 0), FIELD)
    assert (s.nvars, len(s.equations)) == (8, 8)
    k2 = path_graph(2)
    assert build_system_2d(k2, sample_lengths(k2, 2, FIELD, 0)).nvars == 0


def test_user_lengths_without_square_root():
    # a non-residue on the pinned edge still gives a valid placement
    g = complete_graph(3)
    nonres = next(a for a in range(2, 100) if not FIELD.is_square(a))
    lam = EdgeLengthAssignment({(0, 1): nonres, (0, 2): 5, (1, 2): 7}, FIELD.p, seed=1)
    s = build_system_2d(g, lam, FIELD, pinned_edge=(0, 1))
    pb = s.pinned[1]
    assert (pb[0] ** 2 + pb[1] ** 2) % FIELD.p == nonres
    assert quotient_dimension(groebner_basis(s.equations, s.ring)) == 2


def test_wrong_edge_count_is_rejected():
    with pytest.raises(ValueError):
        count_realizations(complete_graph(4), 2)
    with pytest.raises(ValueError):
        count_realizations(three_prism(), 3)


def test_preprocess_examples():
    pre = preprocess(complete_graph(4), 3)
    assert pre.graph.n == 3 and pre.factor == 2
    assert preprocess(three_prism(), 2).factor == 1
    pre = preprocess(decode(511, 5), 3)
    assert pre.factor == 4 and pre.graph.n == 3


@given(st.integers(3, 9), st.integers(0, 2**32 - 1))
def test_h1_graphs_preprocess_to_an_edge(n, seed):
    g = random_henneberg(n, 2, random.Random(seed), kinds=("h1",))
    pre = preprocess(g, 2)
    assert pre.graph.n == 2 and pre.factor == 2 ** (n - 2)


def test_small_counts():
    assert count_realizations(complete_graph(3)).value == 2
    assert count_realizations(three_prism()).value == 24
    assert count_realizations(complete_graph(4), 3).value == 2
    assert count_realizations(decode(16350, 6), 3).value == 16


def test_counts_survive_disabling_preprocessing():
    for code, n, dim, want in [(31, 4, 2, 4), (511, 5, 3, 4), (7916, 6, 2, 24)]:
        r = count_realizations(decode(code, n), dim, NO_PRE)
        assert r.value == want and r.factor == 1


def test_triangle_free_pinning_fallback(monkeypatch):
    monkeypatch.setattr(rz, "choose_triangle", lambda g: None)
    for code, n, want in [(63, 4, 2), (511, 5, 4), (16350, 6, 16)]:
        r = count_realizations(decode(code, n), 3, NO_PRE)
        assert r.fallback and r.value == want and r.agreed


def test_flexible_graph_detected():
    # K4 plus a pendant edge: 2n-3 edges, but K4 is overbraced and vertex 4 swings
    g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
    r = count_realizations(g, 2, NO_PRE)
    assert r.value is FLEXIBLE and r.flexible
    assert r.to_json()["value"] == "flexible"


@settings(max_examples=25)
@given(laman_graphs(min_n=3, max_n=7))
def test_counts_are_even_and_at_least_minimum(g):
    r = count_realizations(g, 2)
    assert r.agreed
    assert r.value % 2 == 0
    assert r.value >= 2 ** (g.n - 2)


def test_prime_and_seed_invariance():
    g = decode(1269995, 7)
    values = {count_realizations(g, 2, CountConfig(seed=s, primes=(1000000007, 2147483629))).value
              for s in (1, 2)}
    assert values == {56}


def test_raw_count_is_deterministic():
    g = three_prism()
    a, _ = raw_count(g, 2, FIELD.p, 5)
    b, _ = raw_count(g, 2, FIELD.p, 5)
    assert a == b == 24


def test_verdict_protocol():
    mk = lambda *xs: [RunRecord(7, i, x) for i, x in enumerate(xs)]
    assert rz._verdict(mk(24, 24, 24), 3) == (24, True)
    assert rz._verdict(mk(24, 22, 24, 24), 3) == (24, True)
    assert rz._verdict(mk(24, 22, 20, 24, 22), 3) == (24, False)
    assert rz._verdict(mk(24, "flexible", 24), 3) == (FLEXIBLE, False)
    cfg = CountConfig()
    assert rz._settled(mk(1, 1, 1), cfg) and not rz._settled(mk(1, 2, 1), cfg)
    assert rz._settled(mk(1, 2, 3, 4, 5), cfg)


def test_disagreement_triggers_extra_runs(monkeypatch):
    values = iter([10, 12, 12, 12, 12])

    def fake(g, dim, prime, seed, floor=0, stats=None):
        return next(values), rz.build_system(g, dim, sample_lengths(g, dim, FIELD, seed), FIELD)

    monkeypatch.setattr(rz, "raw_count", fake)
    r = count_realizations(three_prism(), 2)
    assert [x.raw for x in r.runs] == [10, 12, 12, 12]
    assert r.value == 12 and r.agreed


def test_config_validation():
    with pytest.raises(ValueError):
        CountConfig(runs=4, max_runs=3)
    cfg = CountConfig(seed=2)
    assert [cfg.seed_for(i) for i in range(2)] == [2_000_006, 2_000_007]


def test_json_record_fields():
    r = count_realizations(decode(7916, 6))
    d = json.loads(r.to_json_line())
    assert {"n", "code", "dim", "value", "agreed", "runs", "factor", "pinned"} <= set(d)
    assert d["value"] == 24 and d["agreed"] and len(d["runs"]) == 3
    assert all({"prime", "seed", "raw"} <= set(x) for x in d["runs"])
    assert "multiplicity" in d["note"]


def test_count_many_matches_serial():
    gs = [three_prism(), decode(31, 4), complete_graph(3)]
    serial = [r.value for r in count_many(gs, 2, jobs=1)]
    parallel = count_many(gs, 2, jobs=2)
    assert [r.value for r in parallel] == serial == [24, 4, 2]
    assert [r.runs[0].seed for r in parallel] == [0, 0, 0]
