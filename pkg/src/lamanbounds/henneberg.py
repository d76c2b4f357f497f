"""Henneberg steps, vertex splitting, and level-by-level graph generation.

Plane steps add a vertex ``x``:

* ``h1``: join ``x`` to two vertices.
* ``h2a``/``h2b``/``h2c``: delete an edge ``uv`` and join ``x`` to ``u``, ``v``
  and a third vertex ``w``.  The variant records how many of ``uw``, ``vw``
  are present (both, one, none).
* ``vsplit``: split a vertex ``c`` into ``c`` and ``x`` joined by an edge;
  both stay adjacent to one shared neighbour ``d`` and the neighbours in
  ``moved`` are handed over to ``x``.

Spatial steps:

* ``3d1``: join ``x`` to three vertices.
* ``3d2``: delete an edge and join ``x`` to its endpoints and two more vertices.
* ``3d3x``/``3d3v``: delete two disjoint edges / two edges sharing a vertex and
  join ``x`` to all their endpoints plus enough vertices to reach five.
"""
from __future__ import annotations

import os
import sqlite3
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from .graph import Edge, Graph, GraphCode, canonical_code, complete_graph, read_graph_list, write_graph_list

KINDS_2D = ("h1", "h2a", "h2b", "h2c", "vsplit")
KINDS_3D = ("3d1", "3d2", "3d3x", "3d3v")
DEFAULT_KINDS = {2: ("h1", "h2a", "h2b", "h2c"), 3: KINDS_3D}
H2_KINDS = ("h2a", "h2b", "h2c")


class StepError(ValueError):
    """A step descriptor that does not match its pattern on the given graph."""


@dataclass(frozen=True)
class StepDescriptor:
    dim: int
    kind: str
    attach: tuple[int, ...] = ()  # neighbours of the new vertex (vsplit: the shared one)
    remove: tuple[Edge, ...] = ()  # deleted edges
    pivot: int | None = None  # vsplit: the vertex being split
    moved: tuple[int, ...] = ()  # vsplit: neighbours handed to the new vertex

    def __str__(self) -> str:
        parts = [self.kind, "attach=" + ",".join(map(str, self.attach))]
        if self.remove:
            parts.append("remove=" + ",".join(f"{u}-{v}" for u, v in self.remove))
        if self.pivot is not None:
            parts.append(f"pivot={self.pivot}")
        if self.moved:
            parts.append("moved=" + ",".join(map(str, self.moved)))
        return " ".join(parts)


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def h2_variant(g: Graph, removed: Edge, third: int) -> str:
    u, v = removed
    present = g.has_edge(u, third) + g.has_edge(v, third)
    return ("h2c", "h2b", "h2a")[present]


def validate_step(g: Graph, s: StepDescriptor) -> None:
    """Raise :class:`StepError` naming the violated pattern."""
    kinds = KINDS_2D if s.dim == 2 else KINDS_3D if s.dim == 3 else ()
    if s.kind not in kinds:
        raise StepError(f"unknown step kind {s.kind!r} for dimension {s.dim}")
    for v in (*s.attach, *s.moved, *([s.pivot] if s.pivot is not None else [])):
        if not 0 <= v < g.n:
            raise StepError(f"{s.kind}: vertex {v} does not exist")
    if len(set(s.attach)) != len(s.attach):
        raise StepError(f"{s.kind}: repeated attachment vertex")
    for e in s.remove:
        if not g.has_edge(*e):
            raise StepError(f"{s.kind}: removed edge {e} is not in the graph")
    k = s.kind
    attach = set(s.attach)
    if k == "h1":
        if len(s.attach) != 2 or s.remove:
            raise StepError("h1: needs two attachment vertices and no removed edge")
    elif k in H2_KINDS:
        if len(s.attach) != 3 or len(s.remove) != 1:
            raise StepError(f"{k}: needs one removed edge and three attachment vertices")
        (u, v), = s.remove
        if not {u, v} <= attach:
            raise StepError(f"{k}: the removed edge's endpoints must be attachment vertices")
        (w,) = attach - {u, v}
        actual = h2_variant(g, (u, v), w)
        if actual != k:
            raise StepError(
                f"{k}: auxiliary edges {u}-{w}, {v}-{w} give pattern {actual}, not {k}"
            )
    elif k == "vsplit":
        c = s.pivot
        if c is None or len(s.attach) != 1:
            raise StepError("vsplit: needs a pivot and exactly one shared neighbour")
        (d,) = s.attach
        if d not in g.adj[c]:
            raise StepError(f"vsplit: shared vertex {d} is not a neighbour of pivot {c}")
        if s.remove:
            raise StepError("vsplit: removed edges are implied by the moved set")
        if not set(s.moved) <= g.adj[c] - {d}:
            raise StepError("vsplit: moved vertices must be neighbours of the pivot other than the shared one")
    elif k == "3d1":
        if len(s.attach) != 3 or s.remove:
            raise StepError("3d1: needs three attachment vertices and no removed edge")
    elif k == "3d2":
        if len(s.attach) != 4 or len(s.remove) != 1:
            raise StepError("3d2: needs one removed edge and four attachment vertices")
        if not set(s.remove[0]) <= attach:
            raise StepError("3d2: the removed edge's endpoints must be attachment vertices")
    elif k in ("3d3x", "3d3v"):
        if len(s.attach) != 5 or len(s.remove) != 2:
            raise StepError(f"{k}: needs two removed edges and five attachment vertices")
        (a, b), (c, d) = s.remove
        if _edge(a, b) == _edge(c, d):
            raise StepError(f"{k}: the two removed edges coincide")
        shared = {a, b} & {c, d}
        if k == "3d3x" and shared:
            raise StepError("3d3x: removed edges must be disjoint")
        if k == "3d3v" and len(shared) != 1:
            raise StepError("3d3v: removed edges must share exactly one vertex")
        if not {a, b, c, d} <= attach:
            raise StepError(f"{k}: all endpoints of removed edges must be attachment vertices")


def apply_step(g: Graph, s: StepDescriptor) -> Graph:
    """New graph with vertex ``g.n`` added according to ``s``."""
    validate_step(g, s)
    x = g.n
    if s.kind == "vsplit":
        c, (d,) = s.pivot, s.attach
        edges = set(g.edges) - {_edge(c, b) for b in s.moved}
        edges |= {(b, x) for b in s.moved}
        edges |= {(c, x), (d, x)}
        return Graph(g.n + 1, frozenset(edges))
    return g.add_vertex(s.attach, s.remove)


def enumerate_steps(g: Graph, dim: int, kinds: Iterable[str] | None = None) -> list[StepDescriptor]:
    """All valid descriptors of the requested kinds, without duplicates."""
    kinds = set(DEFAULT_KINDS[dim] if kinds is None else kinds)
    allowed = set(KINDS_2D if dim == 2 else KINDS_3D)
    if not kinds <= allowed:
        raise ValueError(f"kinds {sorted(kinds - allowed)} are not dimension-{dim} steps")
    out: list[StepDescriptor] = []
    V = range(g.n)
    edges = g.sorted_edges()
    if "h1" in kinds:
        out += [StepDescriptor(2, "h1", pair) for pair in combinations(V, 2)]
    if kinds & set(H2_KINDS):
        for u, v in edges:
            for w in V:
                if w in (u, v):
                    continue
                k = h2_variant(g, (u, v), w)
                if k in kinds:
                    out.append(StepDescriptor(2, k, tuple(sorted((u, v, w))), ((u, v),)))
    if "vsplit" in kinds:
        for c in V:
            nb = sorted(g.adj[c])
            for d in nb:
                rest = [b for b in nb if b != d]
                if not rest:
                    continue
                # the smallest remaining neighbour stays with c: splits are symmetric in c and x
                tail = rest[1:]
                for r in range(len(tail) + 1):
                    for moved in combinations(tail, r):
                        out.append(StepDescriptor(2, "vsplit", (d,), (), c, moved))
    if "3d1" in kinds:
        out += [StepDescriptor(3, "3d1", t) for t in combinations(V, 3)]
    if "3d2" in kinds:
        for u, v in edges:
            others = [w for w in V if w not in (u, v)]
            for extra in combinations(others, 2):
                out.append(StepDescriptor(3, "3d2", tuple(sorted((u, v, *extra))), ((u, v),)))
    if kinds & {"3d3x", "3d3v"}:
        for e1, e2 in combinations(edges, 2):
            ends = set(e1) | set(e2)
            k = "3d3x" if len(ends) == 4 else "3d3v"
            if k not in kinds:
                continue
            others = [w for w in V if w not in ends]
            for extra in combinations(others, 5 - len(ends)):
                out.append(StepDescriptor(3, k, tuple(sorted((*ends, *extra))), (e1, e2)))
    return out


def children(g: Graph, dim: int, kinds: Iterable[str] | None = None) -> Iterator[tuple[StepDescriptor, Graph]]:
    for s in enumerate_steps(g, dim, kinds):
        yield s, apply_step(g, s)


# -- generation ------------------------------------------------------------------


class CodeSet:
    """Set of graph codes for one vertex count, spilling to sqlite when large."""

    def __init__(self, n: int, spill_threshold: int = 2_000_000, directory: str | None = None):
        self.n = n
        self.threshold = spill_threshold
        self.directory = directory
        self._mem: set[int] = set()
        self._db: sqlite3.Connection | None = None
        self._path: str | None = None

    def _spill(self):
        if self._db is None:
            fd, self._path = tempfile.mkstemp(suffix=".sqlite", dir=self.directory)
            os.close(fd)
            self._db = sqlite3.connect(self._path)
            self._db.execute("CREATE TABLE codes (code TEXT PRIMARY KEY)")
        self._db.executemany("INSERT OR IGNORE INTO codes VALUES (?)", ((str(c),) for c in self._mem))
        self._db.commit()
        self._mem.clear()

    def add(self, code: int):
        self._mem.add(code)
        if len(self._mem) >= self.threshold:
            self._spill()

    def update(self, codes: Iterable[int]):
        for c in codes:
            self.add(c)

    def __contains__(self, code: int) -> bool:
        if code in self._mem:
            return True
        if self._db is None:
            return False
        return self._db.execute("SELECT 1 FROM codes WHERE code = ?", (str(code),)).fetchone() is not None

    def __len__(self) -> int:
        if self._db is None:
            return len(self._mem)
        self._spill()
        return self._db.execute("SELECT COUNT(*) FROM codes").fetchone()[0]

    def __iter__(self) -> Iterator[int]:
        if self._db is None:
            yield from sorted(self._mem)
            return
        self._spill()
        rows = self._db.execute("SELECT code FROM codes")
        yield from sorted(int(r[0]) for r in rows)

    def codes(self) -> Iterator[GraphCode]:
        for c in self:
            yield GraphCode(self.n, c)

    def close(self):
        if self._db is not None:
            self._db.close()
            os.unlink(self._path)
            self._db = None

    def __del__(self):
        try:
            self.close()
        except Exception:
            pass


def base_graph(dim: int) -> Graph:
    return complete_graph(dim)


def _expand(args) -> list[int]:
    n, code, dim, kinds = args
    g = GraphCode(n, code).graph()
    return sorted({canonical_code(h).code for _, h in children(g, dim, kinds)})


def _level_path(out_dir: Path, dim: int, n: int) -> Path:
    return out_dir / f"dim{dim}_n{n:02d}.txt"


def generate_levels(
    max_n: int,
    dim: int = 2,
    kinds: Sequence[str] | None = None,
    keep: Callable[[Graph], bool] | None = None,
    jobs: int = 1,
    out_dir: str | os.PathLike | None = None,
    spill_threshold: int = 2_000_000,
) -> Iterator[tuple[int, CodeSet]]:
    """Yield ``(n, canonical codes)`` level by level from the base graph.

    With ``out_dir`` each finished level is written atomically as a graph list
    file, and existing level files are reused, so an interrupted run resumes
    at the first missing level.  ``keep`` prunes graphs before they are
    expanded further.
    """
    kinds = tuple(DEFAULT_KINDS[dim] if kinds is None else kinds)
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    base = base_graph(dim)
    level = CodeSet(base.n, spill_threshold)
    level.add(canonical_code(base).code)
    n = base.n
    if max_n < n:
        return
    yield n, level
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while n < max_n:
            n += 1
            path = _level_path(out, dim, n) if out is not None else None
            nxt = CodeSet(n, spill_threshold)
            if path is not None and path.exists():
                nxt.update(gc.code for gc in read_graph_list(path))
            else:
                tasks = ((n - 1, c, dim, kinds) for c in level)
                results = pool.map(_expand, tasks, chunksize=16) if pool else map(_expand, tasks)
                for codes in results:
                    for c in codes:
                        if c in nxt:
                            continue
                        if keep is None or keep(GraphCode(n, c).graph()):
                            nxt.add(c)
                if path is not None:
                    tmp = path.with_suffix(".tmp")
                    write_graph_list(nxt.codes(), tmp, header=f"dimension {dim}\nkinds {','.join(kinds)}")
                    os.replace(tmp, path)
            level = nxt
            yield n, level
    finally:
        if pool is not None:
            pool.shutdown()


def generate_up_to(max_n: int, dim: int = 2, **kwargs) -> set[GraphCode]:
    """Canonical codes of all graphs with ``max_n`` vertices reachable from the base.

    In space the result is a candidate list: the steps preserve the edge count
    but not necessarily rigidity.
    """
    last: set[GraphCode] = set()
    for n, level in generate_levels(max_n, dim, **kwargs):
        if n == max_n:
            last = set(level.codes())
    return last
