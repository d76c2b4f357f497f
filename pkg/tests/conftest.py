from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lamanbounds.graph import Graph
from lamanbounds.henneberg import enumerate_steps, apply_step, base_graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


@st.composite
def permutations_of(draw, n: int) -> list[int]:
    return draw(st.permutations(list(range(n))))


def random_henneberg(n: int, dim: int, rng: random.Random, kinds=None) -> Graph:
    """Random walk of Henneberg steps from the base graph up to ``n`` vertices."""
    g = base_graph(dim)
    while g.n < n:
        steps = enumerate_steps(g, dim, kinds)
        g = apply_step(g, rng.choice(steps))
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


@st.composite
def laman_graphs(draw, min_n: int = 3, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_henneberg(n, 2, random.Random(seed))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(12345)


def tight_graphs_bruteforce(n: int) -> set:
    """Canonical codes of all (2,3)-tight graphs on ``n`` vertices, by exhaustive search."""
    from lamanbounds.graph import canonical_code

    pairs = list(itertools.combinations(range(n), 2))
    m = 2 * n - 3
    inside = []
    for k in range(4, n):
        for vs in itertools.combinations(range(n), k):
            s = set(vs)
            mask = sum(1 << i for i, (u, v) in enumerate(pairs) if u in s and v in s)
            inside.append((mask, 2 * k - 3))
    incident = [sum(1 << i for i, p in enumerate(pairs) if v in p) for v in range(n)]
    found = set()
    for chosen in itertools.combinations(range(len(pairs)), m):
        bits = sum(1 << i for i in chosen)
        if n >= 3 and any((bits & inc).bit_count() < 2 for inc in incident):
            continue
        if any((bits & mask).bit_count() > cap for mask, cap in inside):
            continue
        found.add(canonical_code(Graph.from_edges(n, [pairs[i] for i in chosen])))
    return found
