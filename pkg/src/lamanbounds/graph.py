"""Labeled simple graphs, the upper-triangle integer encoding, and canonical forms.

A graph on ``n`` vertices is identified with the integer whose binary digits
are the entries of the strict upper triangle of its adjacency matrix, read row
by row: the most significant bit is entry (0, 1), followed by (0, 2), ...,
(0, n-1), (1, 2), and so on.  Leading zero bits are implicit, so the vertex
count has to travel alongside the integer.

Canonical codes are computed by individualization-refinement: an equitable
partition refinement seeded by vertex degrees, a search tree that
individualizes vertices of the first smallest non-trivial cell, and pruning
by automorphisms discovered at the leaves.  The canonical code is the
smallest encoding over all leaves of that tree.
"""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Iterator, Sequence

Edge = tuple[int, int]

#: Largest vertex count accepted by :func:`canonical_code`.
CANONICAL_MAX_N = 24


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable labeled simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            norm.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            e = _norm_edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        return Graph(self.n, frozenset(_norm_edge(perm[u], perm[v]) for u, v in self.edges))

    def add_vertex(self, neighbors: Iterable[int], remove: Iterable[Edge] = ()) -> "Graph":
        """Return a copy with a new vertex ``n`` joined to ``neighbors``, minus ``remove``."""
        x = self.n
        edges = set(self.edges)
        for e in remove:
            e = _norm_edge(*e)
            if e not in edges:
                raise ValueError(f"edge {e} is not in the graph")
            edges.remove(e)
        for v in neighbors:
            edges.add((v, x))
        return Graph(self.n + 1, frozenset(edges))

    def remove_vertex(self, v: int) -> "Graph":
        """Delete ``v`` and shift the labels above it down by one."""
        def f(u):
            return u - 1 if u > v else u
        return Graph(
            self.n - 1,
            frozenset((f(a), f(b)) for a, b in self.edges if v not in (a, b)),
        )

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabeled in increasing order of the kept vertices."""
        vs = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(vs)}
        return Graph(
            len(vs),
            frozenset(
                (idx[a], idx[b]) for a, b in self.edges if a in idx and b in idx
            ),
        )

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True, order=True)
class GraphCode:
    """Integer encoding of a labeled graph together with its vertex count."""

    n: int
    code: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if self.code < 0:
            raise ValueError("graph codes are nonnegative")
        bits = self.n * (self.n - 1) // 2
        if self.code >> bits:
            raise ValueError(
                f"code {self.code} needs {self.code.bit_length()} bits but "
                f"{self.n} vertices only provide {bits}"
            )

    def graph(self) -> Graph:
        return decode(self.code, self.n)

    def __str__(self) -> str:
        return f"{self.n}\t{self.code}"


def _pairs(n: int) -> Iterator[Edge]:
    for i in range(n):
        for j in range(i + 1, n):
            yield i, j


def encode(g: Graph) -> GraphCode:
    bits = g.n * (g.n - 1) // 2
    code = 0
    pos = bits
    for i in range(g.n):
        mask = g.adj_masks[i]
        for j in range(i + 1, g.n):
            pos -= 1
            if mask >> j & 1:
                code |= 1 << pos
    return GraphCode(g.n, code)


def decode(code: int, n: int | None = None) -> Graph:
    """Inverse of :func:`encode`; ``n`` defaults to :func:`min_vertex_count`."""
    if n is None:
        n = min_vertex_count(code)
    gc = GraphCode(n, code)  # validates size
    bits = n * (n - 1) // 2
    pos = bits
    edges = []
    for i, j in _pairs(n):
        pos -= 1
        if gc.code >> pos & 1:
            edges.append((i, j))
    return Graph(n, frozenset(edges))


def min_vertex_count(code: int) -> int:
    """Smallest ``n`` with ``n(n-1)/2`` bits, enough to hold ``code``."""
    need = code.bit_length()
    n = 1
    while n * (n - 1) // 2 < need:
        n += 1
    return n


def _code_of_order(masks: Sequence[int], order: Sequence[int]) -> int:
    n = len(order)
    code = 0
    for i in range(n):
        mi = masks[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | (mi >> order[j] & 1)
    return code


def _refine(masks: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by neighbour counts into every cell.

    Cell order is derived from the signatures only, never from labels.
    """
    while True:
        cell_masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            cell_masks.append(m)
        out: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                mv = masks[v]
                sig = tuple((mv & cm).bit_count() for cm in cell_masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                changed = True
                for sig in sorted(groups):
                    out.append(groups[sig])
        cells = out
        if not changed:
            return cells


class _CanonSearch:
    def __init__(self, g: Graph):
        self.n = g.n
        self.masks = g.adj_masks
        self.best: int | None = None
        self.best_order: list[int] | None = None
        self.first: tuple[int, list[int]] | None = None
        self.autos: list[tuple[int, ...]] = []

    def run(self) -> tuple[int, list[int]]:
        degs = [m.bit_count() for m in self.masks]
        cells: dict[int, list[int]] = {}
        for v in range(self.n):
            cells.setdefault(degs[v], []).append(v)
        self._search([cells[d] for d in sorted(cells)], [])
        assert self.best is not None and self.best_order is not None
        return self.best, self.best_order

    def _record_auto(self, a: Sequence[int], b: Sequence[int]):
        # automorphism sending a[i] -> b[i]
        perm = [0] * self.n
        for x, y in zip(a, b):
            perm[x] = y
        t = tuple(perm)
        if t != tuple(range(self.n)):
            self.autos.append(t)

    def _leaf(self, order: list[int]):
        code = _code_of_order(self.masks, order)
        if self.first is None:
            self.first = (code, order)
        elif code == self.first[0]:
            self._record_auto(self.first[1], order)
        elif code == self.best:
            self._record_auto(self.best_order, order)
        if self.best is None or code < self.best:
            self.best = code
            self.best_order = order

    def _orbit_rep(self, prefix: list[int], cell: list[int]) -> dict[int, int]:
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.autos:
            if any(a[x] != x for x in prefix):
                continue
            for v in cell:
                w = a[v]
                if w in parent:
                    rv, rw = find(v), find(w)
                    if rv != rw:
                        parent[max(rv, rw)] = min(rv, rw)
        return {v: find(v) for v in cell}

    def _search(self, cells: list[list[int]], prefix: list[int]):
        cells = _refine(self.masks, cells)
        if len(cells) == self.n:
            self._leaf([c[0] for c in cells])
            return
        ti = min(
            (i for i, c in enumerate(cells) if len(c) > 1),
            key=lambda i: (len(cells[i]), i),
        )
        target = cells[ti]
        explored_roots: set[int] = set()
        for v in sorted(target):
            if explored_roots:
                reps = self._orbit_rep(prefix, target)
                if any(reps[u] == reps[v] for u in explored_roots):
                    continue
            rest = [u for u in target if u != v]
            new_cells = cells[:ti] + [[v], rest] + cells[ti + 1:]
            self._search(new_cells, prefix + [v])
            explored_roots.add(v)


def canonical_labeling(g: Graph) -> list[int]:
    """Vertex order whose encoding is the canonical code (position -> vertex)."""
    if g.n > CANONICAL_MAX_N:
        raise ValueError(
            f"canonical forms are supported up to n={CANONICAL_MAX_N}, got n={g.n}"
        )
    if g.n <= 1:
        return list(range(g.n))
    return _CanonSearch(g).run()[1]


def canonical_code(g: Graph) -> GraphCode:
    """Isomorphism-invariant encoding: the minimal code over the refinement tree."""
    if g.n > CANONICAL_MAX_N:
        raise ValueError(
            f"canonical forms are supported up to n={CANONICAL_MAX_N}, got n={g.n}"
        )
    if g.n <= 1:
        return GraphCode(g.n, 0)
    return GraphCode(g.n, _CanonSearch(g).run()[0])


def canonical_form(g: Graph) -> Graph:
    cc = canonical_code(g)
    return decode(cc.code, cc.n)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_code(g1) == canonical_code(g2)


# -- shared graph list format -------------------------------------------------


def parse_graph_line(line: str) -> GraphCode | None:
    """Parse ``<n><TAB><code>``; blank and ``#`` lines give ``None``.

    A lone integer is accepted and the vertex count inferred.
    """
    s = line.strip()
    if not s or s.startswith("#"):
        return None
    parts = s.split()
    if len(parts) == 1:
        code = int(parts[0])
        return GraphCode(min_vertex_count(code), code)
    if len(parts) != 2:
        raise ValueError(f"expected '<n>\\t<code>', got {line!r}")
    return GraphCode(int(parts[0]), int(parts[1]))


def read_graph_list(source: str | os.PathLike | IO[str]) -> Iterator[GraphCode]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            yield from read_graph_list(fh)
        return
    for lineno, line in enumerate(source, 1):
        try:
            gc = parse_graph_line(line)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if gc is not None:
            yield gc


def write_graph_list(
    codes: Iterable[GraphCode], dest: str | os.PathLike | IO[str], header: str | None = None
) -> int:
    """Write codes in the shared format; returns the number of lines written."""
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            return write_graph_list(codes, fh, header)
    count = 0
    if header:
        for h in header.splitlines():
            dest.write(f"# {h}\n")
    for gc in codes:
        dest.write(f"{gc.n}\t{gc.code}\n")
        count += 1
    return count


def format_graph_list(codes: Iterable[GraphCode]) -> str:
    buf = io.StringIO()
    write_graph_list(codes, buf)
    return buf.getvalue()


# -- a few named graphs used throughout ---------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(_pairs(n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset(_norm_edge(i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def three_prism() -> Graph:
    """Two triangles 0-1-2 and 3-4-5 joined by the matching i -- i+3."""
    return Graph.from_edges(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    )
