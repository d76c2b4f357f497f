"""Structural predicates on graphs.

Sparsity for the plane uses the (k, l)-pebble game.  The spatial count
condition, (3, 6)-sparsity over subgraphs with at least three vertices, lies
outside the pebble game's matroidal range (it needs l < 2k), so it is decided
by dynamic programming over vertex subsets, which is exact and fast enough up
to about 22 vertices.  The same subset routine doubles as the brute-force
oracle for the pebble game.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import networkx as nx

from .graph import Graph

#: Largest vertex count for the subset-enumeration sparsity check.
SUBSET_MAX_N = 22


# -- sparsity ------------------------------------------------------------------


class PebbleGame:
    """Incremental (k, l)-pebble game for 0 <= l < 2k.

    Each vertex starts with ``k`` pebbles.  An edge is accepted when ``l + 1``
    pebbles can be gathered on its two endpoints; accepted edges are
    independent in the (k, l)-sparsity matroid.
    """

    def __init__(self, n: int, k: int, l: int):
        if not 0 <= l < 2 * k:
            raise ValueError(f"pebble game needs 0 <= l < 2k, got k={k}, l={l}")
        self.n, self.k, self.l = n, k, l
        self.pebbles = [k] * n
        self.out: list[list[int]] = [[] for _ in range(n)]

    def _find_pebble(self, start: int, blocked: tuple[int, ...]) -> bool:
        # dfs along oriented edges for a free pebble, then reverse the path
        parent = {start: None}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.out[u]:
                if w in parent or w in blocked:
                    continue
                parent[w] = u
                if self.pebbles[w] > 0:
                    self.pebbles[w] -= 1
                    x = w
                    while parent[x] is not None:
                        p = parent[x]
                        self.out[p].remove(x)
                        self.out[x].append(p)
                        x = p
                    self.pebbles[start] += 1
                    return True
                stack.append(w)
        return False

    def add_edge(self, u: int, v: int) -> bool:
        """Try to insert ``uv``; return whether it was accepted."""
        want = self.l + 1
        while self.pebbles[u] + self.pebbles[v] < want:
            if self.pebbles[u] < self.k and self._find_pebble(u, (v,)):
                continue
            if self.pebbles[v] < self.k and self._find_pebble(v, (u,)):
                continue
            return False
        if self.pebbles[u] > 0:
            self.pebbles[u] -= 1
            self.out[u].append(v)
        else:
            self.pebbles[v] -= 1
            self.out[v].append(u)
        return True


def pebble_sparse(g: Graph, k: int, l: int) -> bool:
    game = PebbleGame(g.n, k, l)
    return all(game.add_edge(u, v) for u, v in g.sorted_edges())


def max_subset_excess(g: Graph, k: int, l: int, min_size: int = 2) -> int:
    """``max |E(S)| - (k|S| - l)`` over vertex subsets with ``|S| >= min_size``.

    Exhaustive over all ``2^n`` subsets; the graph is (k, l)-sparse on those
    subsets iff the result is <= 0.
    """
    n = g.n
    if n > SUBSET_MAX_N:
        raise ValueError(f"subset enumeration supports n <= {SUBSET_MAX_N}, got {n}")
    if n < min_size:
        return -(10**9)
    masks = g.adj_masks
    edges_in = [0] * (1 << n)
    best = None
    for s in range(1, 1 << n):
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        e = edges_in[rest] + (masks[v] & rest).bit_count()
        edges_in[s] = e
        size = s.bit_count()
        if size >= min_size:
            x = e - (k * size - l)
            if best is None or x > best:
                best = x
    return best


def is_sparse_bruteforce(g: Graph, k: int, l: int, min_size: int = 2) -> bool:
    if g.n < min_size:
        return True
    return max_subset_excess(g, k, l, min_size) <= 0


def is_laman(g: Graph) -> bool:
    """(2, 3)-tight: ``|E| = 2n - 3`` and no subgraph exceeds ``2|V'| - 3``."""
    if g.n < 2 or g.m != 2 * g.n - 3:
        return False
    return pebble_sparse(g, 2, 3)


def satisfies_3d_count(g: Graph) -> bool:
    """(3, 6)-tight on subgraphs with ``|V'| >= 3``.

    Necessary for generic minimal rigidity in space, not sufficient.
    """
    if g.n < 3 or g.m != 3 * g.n - 6:
        return False
    return is_sparse_bruteforce(g, 3, 6, min_size=3)


# -- cycles and degrees --------------------------------------------------------


def count_short_cycles(g: Graph) -> tuple[int, int]:
    """Number of simple 3-cycles and 4-cycles, each counted once."""
    masks = g.adj_masks
    tri = 0
    for u, v in g.edges:
        tri += (masks[u] & masks[v]).bit_count()
    tri //= 3
    quad = 0
    for a in range(g.n):
        for c in range(a + 1, g.n):
            k = (masks[a] & masks[c]).bit_count()
            quad += k * (k - 1) // 2
    return tri, quad // 2


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.sorted_edges():
        common = g.adj[u] & g.adj[v]
        for w in sorted(common):
            if w > v:
                out.append((u, v, w))
    return out


def four_cycles(g: Graph) -> list[tuple[int, int, int, int]]:
    """Simple 4-cycles as vertex sequences starting at their smallest vertex."""
    out = set()
    for a in range(g.n):
        for b, d in combinations(sorted(g.adj[a]), 2):
            if b < a or d < a:
                continue
            for c in g.adj[b] & g.adj[d]:
                if c > a:
                    out.add((a, b, c, d))
    return sorted(out)


def degree_profile(g: Graph) -> tuple[int, ...]:
    return tuple(sorted(g.degrees()))


# -- planarity -----------------------------------------------------------------


@dataclass(frozen=True)
class Planarity:
    planar: bool
    rotation: dict[int, tuple[int, ...]] | None = None  # clockwise neighbour order

    def __bool__(self) -> bool:
        return self.planar

    def faces(self) -> list[list[int]]:
        """Faces of the embedding as vertex cycles (requires a witness)."""
        if self.rotation is None:
            raise ValueError("no embedding witness")
        nxt: dict[tuple[int, int], tuple[int, int]] = {}
        for v, nbrs in self.rotation.items():
            d = len(nbrs)
            for i, u in enumerate(nbrs):
                # arriving at v from u, leave along the successor of u around v
                nxt[(u, v)] = (v, nbrs[(i + 1) % d])
        seen = set()
        faces = []
        for dart in nxt:
            if dart in seen:
                continue
            face = []
            d = dart
            while d not in seen:
                seen.add(d)
                face.append(d[0])
                d = nxt[d]
            faces.append(face)
        return faces


def planarity(g: Graph) -> Planarity:
    """Planarity test with a rotation-system witness when planar."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    ok, emb = nx.check_planarity(G)
    if not ok:
        return Planarity(False)
    rotation = {v: tuple(emb.neighbors_cw_order(v)) for v in range(g.n)}
    return Planarity(True, rotation)


def is_planar(g: Graph) -> bool:
    return planarity(g).planar


# -- Hamiltonian cycles ----------------------------------------------------------


def hamiltonian_cycles(g: Graph, start: int = 0) -> Iterator[list[int]]:
    """Enumerate Hamiltonian cycles, each once (fixed start, one direction)."""
    n = g.n
    if n < 3 or any(len(a) < 2 for a in g.adj):
        return
    adj = [sorted(a) for a in g.adj]
    masks = g.adj_masks
    full = (1 << n) - 1
    path = [start]

    def extend(used: int):
        u = path[-1]
        if len(path) == n:
            if masks[u] >> start & 1 and path[1] < path[-1]:
                yield list(path)
            return
        for w in adj[u]:
            if used >> w & 1:
                continue
            nu = used | (1 << w)
            # every unvisited vertex still needs two usable neighbours
            free = full & ~nu
            ok = True
            rem = free
            while rem:
                low = rem & -rem
                x = low.bit_length() - 1
                rem ^= low
                avail = masks[x] & (free | (1 << w) | (1 << start))
                if avail.bit_count() < 2:
                    ok = False
                    break
            if not ok:
                continue
            path.append(w)
            yield from extend(nu)
            path.pop()

    yield from extend(1 << start)


def hamiltonian_cycle(g: Graph) -> list[int] | None:
    return next(hamiltonian_cycles(g), None)


def is_hamiltonian_cycle(g: Graph, cycle: list[int]) -> bool:
    if sorted(cycle) != list(range(g.n)) or g.n < 3:
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % g.n]) for i in range(g.n))


# -- subgraph containment ----------------------------------------------------------


def subgraph_embedding(g: Graph, h: Graph) -> dict[int, int] | None:
    """An injective map V(h) -> V(g) carrying edges to edges, or ``None``."""
    if h.n > g.n or h.m > g.m:
        return None
    if h.n == 0:
        return {}
    # most-constrained-first order: prefer vertices with many placed neighbours
    order: list[int] = []
    remaining = set(range(h.n))
    while remaining:
        w = max(
            remaining,
            key=lambda v: (sum(1 for o in order if v in h.adj[o]), h.degree(v), -v),
        )
        remaining.discard(w)
        order.append(w)
    gdeg = g.degrees()
    gm = g.adj_masks
    back = [[o for o in order[:i] if o in h.adj[v]] for i, v in enumerate(order)]
    mapping: dict[int, int] = {}
    used = 0

    def rec(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        v = order[i]
        need = h.degree(v)
        if back[i]:
            cand_mask = gm[mapping[back[i][0]]]
            for b in back[i][1:]:
                cand_mask &= gm[mapping[b]]
        else:
            cand_mask = (1 << g.n) - 1
        cand_mask &= ~used
        while cand_mask:
            low = cand_mask & -cand_mask
            x = low.bit_length() - 1
            cand_mask ^= low
            if gdeg[x] < need:
                continue
            mapping[v] = x
            used |= low
            if rec(i + 1):
                return True
            used ^= low
            del mapping[v]
        return False

    return dict(mapping) if rec(0) else None


def contains_subgraph(g: Graph, h: Graph) -> bool:
    """Whether ``g`` has a (not necessarily induced) subgraph isomorphic to ``h``."""
    return subgraph_embedding(g, h) is not None
