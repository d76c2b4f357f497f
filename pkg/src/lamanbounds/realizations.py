"""Counting complex realizations of rigid graphs with random edge lengths.

The distance equations ``|X_u - X_v|^2 = lambda_uv`` over Z_p are brought
to a normal form that kills the rotations and translations (one edge pinned
in the plane, one triangle pinned in space), a Groebner basis is computed,
and the number of standard monomials is the number of solutions.  Reflected
solutions are kept, so the triangle counts 2 and the three-prism 24.
"""
from __future__ import annotations

import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Sequence

from .algebra import (
    FLEXIBLE,
    GroebnerStats,
    Polynomial,
    PolynomialRing,
    PrimeField,
    dump_system,
    groebner_basis,
    quotient_dimension,
)
from .algebra.field import DEFAULT_PRIME_FLOOR, default_prime
from .graph import Edge, Graph, encode

MULTIPLICITY_NOTE = (
    "solutions counted with multiplicity; random lengths make the ideal radical "
    "with high probability"
)


# -- edge lengths ------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeLengthAssignment:
    """Squared edge lengths in Z_p, reproducible from ``seed``."""

    values: Mapping[Edge, int]
    p: int
    seed: int | None = None

    def __post_init__(self):
        for e, v in self.values.items():
            if not 0 < v < self.p:
                raise ValueError(f"squared length of {e} must be a nonzero residue mod {self.p}")

    @classmethod
    def random(cls, g: Graph, field: PrimeField, seed: int) -> EdgeLengthAssignment:
        rng = random.Random(seed)
        vals = {e: field.random_nonzero(rng) for e in g.sorted_edges()}
        return cls(vals, field.p, seed)

    def __getitem__(self, e: Edge) -> int:
        u, v = e
        return self.values[(u, v) if u < v else (v, u)]


def sample_lengths(g: Graph, dim: int, field: PrimeField, seed: int) -> EdgeLengthAssignment:
    """Uniform random lengths, except on the pinned edge or triangle.

    There the lengths are induced by random pinned coordinates, so that the
    pinned vertices get the sparse placement (on the first axis, in the first
    coordinate plane) without square roots of non-residues.
    """
    rng = random.Random(seed)
    vals = {e: field.random_nonzero(rng) for e in g.sorted_edges()}
    p = field.p
    if dim == 2 and g.n > 2:
        a, b = default_pinned_edge(g)
        vals[(a, b)] = pow(field.random_nonzero(rng), 2, p)
    elif dim == 3:
        found = choose_triangle(g)
        if found:
            a, b, c = found[0]
            while True:
                b1, c1, c2 = (field.random_nonzero(rng) for _ in range(3))
                lab, lac, lbc = b1 * b1 % p, (c1 * c1 + c2 * c2) % p, ((c1 - b1) ** 2 + c2 * c2) % p
                if lac and lbc:
                    break
            vals[(a, b)], vals[(a, c)], vals[(b, c)] = lab, lac, lbc
    return EdgeLengthAssignment(vals, p, seed)


# -- systems -----------------------------------------------------------------------


@dataclass
class DistanceSystem:
    ring: PolynomialRing
    equations: list[Polynomial]
    dim: int
    variables: dict[int, tuple[int, ...]]  # vertex -> variable indices
    pinned: dict[int, tuple[int, ...]]  # vertex -> fixed coordinates (possibly partial)
    divisor: int = 1  # size of the residual symmetry group acting freely on solutions
    fallback: bool = False

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def dump(self) -> str:
        return dump_system(self.equations)


def _coord(ring: PolynomialRing, sysvars, pinned, v: int, d: int) -> Polynomial:
    if v in sysvars and sysvars[v][d] is not None:
        return ring.var(sysvars[v][d])
    return ring.constant(pinned[v][d])


def _distance_eq(ring, sysvars, pinned, dim, u, v, lam) -> Polynomial:
    f = ring.constant(-lam)
    for d in range(dim):
        diff = _coord(ring, sysvars, pinned, u, d) - _coord(ring, sysvars, pinned, v, d)
        f = f + diff * diff
    return f


def _check_counts(g: Graph, dim: int):
    want = 2 * g.n - 3 if dim == 2 else 3 * g.n - 6
    if g.n < dim or g.m != want:
        raise ValueError(f"graph has {g.m} edges on {g.n} vertices; dimension {dim} needs {want}")
    if not g.is_connected():
        raise ValueError("graph is disconnected")


def default_pinned_edge(g: Graph) -> Edge:
    """Edge with the largest endpoint degree sum; smallest such edge on ties."""
    return max(g.sorted_edges(), key=lambda e: (g.degree(e[0]) + g.degree(e[1]), -e[0], -e[1]))


def build_system_2d(
    g: Graph,
    lengths: EdgeLengthAssignment,
    field: PrimeField | None = None,
    pinned_edge: Edge | None = None,
) -> DistanceSystem:
    _check_counts(g, 2)
    field = field or PrimeField(lengths.p, floor=1)
    if g.n == 2:
        ring = PolynomialRing(0, field)
        a, b = g.sorted_edges()[0]
        return DistanceSystem(ring, [], 2, {}, {a: (0, 0), b: (0, 0)})
    a, b = pinned_edge or default_pinned_edge(g)
    if not g.has_edge(a, b):
        raise ValueError(f"pinned edge {(a, b)} is not an edge")
    lam = lengths[(a, b)]
    root = field.sqrt(lam)
    if root is not None:
        pb = (root, 0)
    else:
        pb = field.sum_of_two_squares(lam, random.Random(lengths.seed))
    pinned = {a: (0, 0), b: pb}
    free = [v for v in range(g.n) if v not in pinned]
    sysvars = {v: (2 * i, 2 * i + 1) for i, v in enumerate(free)}
    ring = PolynomialRing(2 * len(free), field)
    eqs = [
        _distance_eq(ring, sysvars, pinned, 2, u, v, lengths[(u, v)])
        for u, v in g.sorted_edges()
        if {u, v} != {a, b}
    ]
    return DistanceSystem(ring, eqs, 2, sysvars, pinned)


def tetrahedral_growth(g: Graph, seed: Sequence[int]) -> list[int]:
    """Grow ``seed`` by repeatedly adding a vertex with three neighbours inside."""
    grown = list(seed)
    inside = set(grown)
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if v not in inside and len(g.adj[v] & inside) >= 3:
                grown.append(v)
                inside.add(v)
                changed = True
    return grown


def choose_triangle(g: Graph) -> tuple[tuple[int, int, int], list[int]] | None:
    """Triangle whose tetrahedral growth is largest, with the grown vertex order."""
    best = None
    for u, v in g.sorted_edges():
        for w in sorted(g.adj[u] & g.adj[v]):
            if w < v:
                continue
            grown = tetrahedral_growth(g, (u, v, w))
            if best is None or len(grown) > len(best[1]):
                best = ((u, v, w), grown)
    return best


def _pin_triangle(field: PrimeField, lab: int, lac: int, lbc: int, rng: random.Random):
    # b with |b|^2 = lab, c with |c|^2 = lac and |c - b|^2 = lbc
    root = field.sqrt(lab)
    p = field.p
    s = (lab + lac - lbc) * field.inv(2) % p
    alpha = s * field.inv(lab) % p
    r = (lac - alpha * alpha % p * lab) % p
    if root is not None:
        b = (root, 0, 0)
        c2 = field.sqrt(r)
        if c2 is not None:
            return b, (alpha * root % p, c2, 0)
        y, z = field.sum_of_two_squares(r, rng)
        return b, (alpha * root % p, y, z)
    bx, by = field.sum_of_two_squares(lab, rng)
    b = (bx, by, 0)
    # c = alpha*b + beta*(-by, bx, 0) + gamma*e3 with beta^2*lab + gamma^2 = r
    beta = field.sqrt(r * field.inv(lab))
    if beta is not None:
        gamma = 0
    else:
        for _ in range(10_000):
            beta = rng.randrange(p)
            gamma = field.sqrt(r - beta * beta % p * lab)
            if gamma is not None:
                break
        else:
            raise ArithmeticError("could not place the pinned triangle")
    c = ((alpha * bx - beta * by) % p, (alpha * by + beta * bx) % p, gamma)
    return b, c


def build_system_3d(
    g: Graph,
    lengths: EdgeLengthAssignment,
    field: PrimeField | None = None,
    triangle: tuple[int, int, int] | None = None,
) -> DistanceSystem:
    _check_counts(g, 3)
    field = field or PrimeField(lengths.p, floor=1)
    rng = random.Random(lengths.seed)
    if triangle is None:
        found = choose_triangle(g)
        order = found[1] if found else None
        triangle = found[0] if found else None
    else:
        order = tetrahedral_growth(g, triangle)
    if triangle is not None:
        a, b, c = triangle
        pb, pc = _pin_triangle(field, lengths[(a, b)], lengths[(a, c)], lengths[(b, c)], rng)
        pinned = {a: (0, 0, 0), b: pb, c: pc}
        rest = [v for v in order if v not in pinned] + [
            v for v in range(g.n) if v not in order
        ]
        sysvars = {v: (3 * i, 3 * i + 1, 3 * i + 2) for i, v in enumerate(rest)}
        ring = PolynomialRing(3 * len(rest), field)
        eqs = [
            _distance_eq(ring, sysvars, pinned, 3, u, v, lengths[(u, v)])
            for u, v in g.sorted_edges()
            if not (u in pinned and v in pinned)
        ]
        return DistanceSystem(ring, eqs, 3, sysvars, pinned)
    # no triangle: normalize a at 0, b on the first axis, c in the first plane
    a, b, c = _nonadjacent_triple(g)
    pinned = {a: (0, 0, 0), b: (None, 0, 0), c: (None, None, 0)}
    sysvars: dict[int, tuple] = {}
    idx = 0
    for v in range(g.n):
        slots = []
        for d in range(3):
            if v in pinned and pinned[v][d] is not None:
                slots.append(None)
            else:
                slots.append(idx)
                idx += 1
        if any(s is not None for s in slots):
            sysvars[v] = tuple(slots)
    ring = PolynomialRing(idx, field)
    eqs = [
        _distance_eq(ring, sysvars, pinned, 3, u, v, lengths[(u, v)])
        for u, v in g.sorted_edges()
    ]
    # sign flips of two axes preserve the normal form
    return DistanceSystem(ring, eqs, 3, sysvars, pinned, divisor=4, fallback=True)


def _nonadjacent_triple(g: Graph) -> tuple[int, int, int]:
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if g.has_edge(a, b):
                continue
            for c in range(b + 1, g.n):
                if not g.has_edge(a, c) and not g.has_edge(b, c):
                    return a, b, c
    return 0, 1, 2


def build_system(g: Graph, dim: int, lengths: EdgeLengthAssignment, field: PrimeField | None = None):
    if dim == 2:
        return build_system_2d(g, lengths, field)
    if dim == 3:
        return build_system_3d(g, lengths, field)
    raise ValueError(f"dimension must be 2 or 3, got {dim}")


# -- preprocessing -----------------------------------------------------------------


@dataclass(frozen=True)
class Preprocessed:
    graph: Graph
    factor: int
    removed: tuple[int, ...]  # original labels, in removal order
    labels: tuple[int, ...]  # original label of each remaining vertex


def preprocess(g: Graph, dim: int) -> Preprocessed:
    """Strip degree-``dim`` vertices down to the base (edge or triangle)."""
    base = dim
    labels = list(range(g.n))
    removed = []
    cur = g
    while cur.n > base:
        for v in range(cur.n):
            if cur.degree(v) == dim:
                nxt = cur.remove_vertex(v)
                if nxt.is_connected():
                    removed.append(labels.pop(v))
                    cur = nxt
                    break
        else:
            break
    return Preprocessed(cur, 2 ** len(removed), tuple(removed), tuple(labels))


# -- counting ----------------------------------------------------------------------


@dataclass(frozen=True)
class CountConfig:
    prime: int | None = None  # None: the default prime
    prime_floor: int = DEFAULT_PRIME_FLOOR
    runs: int = 3
    max_runs: int = 5
    seed: int = 0
    preprocess: bool = True
    primes: tuple[int, ...] = ()  # if set, run i uses primes[i % len(primes)]

    def __post_init__(self):
        if self.runs < 1 or self.max_runs < self.runs:
            raise ValueError("need 1 <= runs <= max_runs")

    def prime_for(self, i: int) -> int:
        if self.primes:
            return self.primes[i % len(self.primes)]
        return self.prime if self.prime is not None else default_prime()

    def seed_for(self, i: int) -> int:
        return self.seed * 1_000_003 + i


@dataclass(frozen=True)
class RunRecord:
    prime: int
    seed: int
    raw: int | str  # "flexible": positive-dimensional or inconsistent system
    seconds: float = 0.0


@dataclass
class RealizationCount:
    n: int
    code: int
    dim: int
    value: object  # int or FLEXIBLE
    agreed: bool
    runs: list[RunRecord]
    factor: int
    removed: tuple[int, ...]
    pinned: tuple[int, ...]
    fallback: bool = False
    note: str = MULTIPLICITY_NOTE

    @property
    def flexible(self) -> bool:
        return self.value is FLEXIBLE

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "code": str(self.code) if self.code >= 1 << 53 else self.code,
            "dim": self.dim,
            "value": "flexible" if self.flexible else self.value,
            "agreed": self.agreed,
            "runs": [asdict(r) for r in self.runs],
            "factor": self.factor,
            "pinned": list(self.pinned),
            "removed": list(self.removed),
            "fallback": self.fallback,
            "note": self.note,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_json())


def raw_count(g: Graph, dim: int, prime: int, seed: int, floor: int = DEFAULT_PRIME_FLOOR,
              stats: GroebnerStats | None = None) -> tuple[object, DistanceSystem]:
    """One run: random lengths, system, basis, staircase size (before any doubling)."""
    field = PrimeField(prime, floor=floor)
    lengths = sample_lengths(g, dim, field, seed)
    system = build_system(g, dim, lengths, field)
    if system.nvars == 0:
        return 1, system
    basis = groebner_basis(system.equations, system.ring, stats)
    q = quotient_dimension(basis)
    # With dn - C(d+1, 2) edges, no solutions for random lengths means the length
    # map is not dominant: the rigidity matrix is rank deficient, so some part flexes
    # while an overbraced part absorbs the surplus edge.
    if q is FLEXIBLE or q == 0:
        return FLEXIBLE, system
    if system.divisor > 1:
        if q % system.divisor:
            raise ArithmeticError(
                f"raw count {q} is not divisible by the symmetry factor {system.divisor}"
            )
        q //= system.divisor
    return q, system


def _task(args) -> RunRecord:
    n, edges, dim, prime, seed, floor = args
    g = Graph(n, frozenset(edges))
    t0 = time.perf_counter()
    q, _ = raw_count(g, dim, prime, seed, floor)
    return RunRecord(prime, seed, "flexible" if q is FLEXIBLE else q, time.perf_counter() - t0)


def _verdict(runs: list[RunRecord], need: int) -> tuple[object, bool]:
    tally = Counter(r.raw for r in runs)
    if "flexible" in tally:
        return FLEXIBLE, tally["flexible"] >= need
    value, hits = max(tally.items(), key=lambda kv: (kv[1], kv[0]))
    if hits >= need:
        return value, True
    # genericity failures only lose solutions, so the largest value is the best guess
    return max(tally), False


def _settled(runs: list[RunRecord], cfg: CountConfig) -> bool:
    if len(runs) >= cfg.max_runs:
        return True
    return len(runs) >= cfg.runs and max(Counter(r.raw for r in runs).values()) >= cfg.runs


def _assemble(g: Graph, dim: int, pre: Preprocessed, runs: list[RunRecord], cfg: CountConfig,
              system: DistanceSystem | None) -> RealizationCount:
    raw, agreed = _verdict(runs, cfg.runs)
    if raw is FLEXIBLE:
        value = FLEXIBLE
    elif isinstance(raw, int):
        value = raw * pre.factor
    else:
        value = raw
    pinned = tuple(pre.labels[v] for v in system.pinned) if system else ()
    gc = encode(g)
    return RealizationCount(
        gc.n, gc.code, dim, value, agreed, runs, pre.factor, pre.removed, pinned,
        fallback=bool(system and system.fallback),
    )


def _prepare(g: Graph, dim: int, cfg: CountConfig) -> Preprocessed:
    _check_counts(g, dim)
    if cfg.preprocess:
        return preprocess(g, dim)
    return Preprocessed(g, 1, (), tuple(range(g.n)))


def count_realizations(g: Graph, dim: int = 2, config: CountConfig | None = None) -> RealizationCount:
    """Probabilistic realization count with the repeated-run agreement protocol.

    Runs use fresh random lengths (and optionally different primes).  After
    ``config.runs`` runs the result is accepted if they all agree; otherwise
    further runs are made up to ``config.max_runs`` and the value seen most
    often is reported, with ``agreed`` true only if it occurred at least
    ``config.runs`` times.  Any run with a positive-dimensional or an
    inconsistent system makes the verdict FLEXIBLE.
    """
    cfg = config or CountConfig()
    pre = _prepare(g, dim, cfg)
    runs: list[RunRecord] = []
    system = None
    while not _settled(runs, cfg):
        i = len(runs)
        prime, seed = cfg.prime_for(i), cfg.seed_for(i)
        t0 = time.perf_counter()
        q, system = raw_count(pre.graph, dim, prime, seed, cfg.prime_floor)
        runs.append(RunRecord(prime, seed, "flexible" if q is FLEXIBLE else q,
                              time.perf_counter() - t0))
    return _assemble(g, dim, pre, runs, cfg, system)


def count_many(graphs: Iterable[Graph], dim: int = 2, config: CountConfig | None = None,
               jobs: int = 1) -> list[RealizationCount]:
    """Count several graphs; every (graph, run) pair is an independent task."""
    cfg = config or CountConfig()
    graphs = list(graphs)
    if jobs <= 1:
        return [count_realizations(g, dim, cfg) for g in graphs]
    pres = [_prepare(g, dim, cfg) for g in graphs]
    runs: list[list[RunRecord]] = [[] for _ in graphs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        pending = list(range(len(graphs)))
        while pending:
            tasks = []
            for gi in pending:
                have = len(runs[gi])
                want = cfg.runs if have < cfg.runs else have + 1
                for i in range(have, min(want, cfg.max_runs)):
                    pg = pres[gi].graph
                    tasks.append((gi, (pg.n, tuple(pg.edges), dim, cfg.prime_for(i),
                                       cfg.seed_for(i), cfg.prime_floor)))
            results = pool.map(_task, [t[1] for t in tasks])
            for (gi, _), rec in zip(tasks, results):
                runs[gi].append(rec)
            pending = [gi for gi in pending if not _settled(runs[gi], cfg)]
    out = []
    for g, pre, rs in zip(graphs, pres, runs):
        field = PrimeField(rs[0].prime, floor=cfg.prime_floor)
        system = build_system(pre.graph, dim, sample_lengths(pre.graph, dim, field, rs[0].seed), field)
        out.append(_assemble(g, dim, pre, rs, cfg, system))
    return out
