"""Membership tests and searches for two heuristic families of Laman graphs.

``T(n)``: planar Laman graphs whose degrees are all 3 or 4, with exactly two
3-cycles, which are edge-disjoint, and exactly ``n - 3`` simple 4-cycles.

``S(n)``: Laman graphs with a Hamiltonian cycle such that, drawing the cycle
as a regular n-gon, the edge set is invariant under the half-turn
``i -> i + n/2`` (even ``n``) or under some reflection ``i -> k - i`` (odd
``n``).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

from .analysis import (
    count_short_cycles,
    degree_profile,
    hamiltonian_cycles,
    is_hamiltonian_cycle,
    is_laman,
    planarity,
    triangles,
)
from .graph import Graph, GraphCode
from .henneberg import generate_levels
from .realizations import CountConfig, count_realizations

SEARCH_MAX_N = 10


@dataclass
class FamilyReport:
    family: str
    verdict: bool
    evidence: dict = field(default_factory=dict)
    reason: str = ""  # first failed condition, empty when the verdict is true

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> str:
        return json.dumps({"family": self.family, "verdict": self.verdict,
                           "reason": self.reason, "evidence": self.evidence})


def _require_laman(g: Graph):
    if not is_laman(g):
        raise ValueError("family membership is only defined for Laman graphs")


def in_T(g: Graph) -> FamilyReport:
    _require_laman(g)
    ev: dict = {}
    rep = FamilyReport("T", False, ev)
    prof = degree_profile(g)
    ev["degrees"] = list(prof)
    tri, quad = count_short_cycles(g)
    ev["triangles"], ev["four_cycles"] = tri, quad
    pl = planarity(g)
    ev["planar"] = pl.planar
    if pl.planar:
        ev["rotation"] = {str(v): list(nb) for v, nb in pl.rotation.items()}
        ev["faces"] = len(pl.faces())
    if not pl.planar:
        rep.reason = "not planar"
    elif not set(prof) <= {3, 4}:
        rep.reason = "degree outside {3, 4}"
    elif tri != 2:
        rep.reason = f"{tri} triangles instead of 2"
    else:
        t1, t2 = triangles(g)
        e1 = {frozenset(p) for p in ((t1[0], t1[1]), (t1[0], t1[2]), (t1[1], t1[2]))}
        e2 = {frozenset(p) for p in ((t2[0], t2[1]), (t2[0], t2[2]), (t2[1], t2[2]))}
        ev["triangles_edge_disjoint"] = not (e1 & e2)
        if e1 & e2:
            rep.reason = "the two triangles share an edge"
        elif quad != g.n - 3:
            rep.reason = f"{quad} four-cycles instead of {g.n - 3}"
        else:
            rep.verdict = True
    return rep


def _symmetries(n: int) -> list[tuple[str, int]]:
    if n % 2 == 0:
        return [("half-turn", n // 2)]
    return [("reflection", k) for k in range(n)]


def _apply(sym: tuple[str, int], i: int, n: int) -> int:
    kind, k = sym
    return (i + k) % n if kind == "half-turn" else (k - i) % n


def chord_set(g: Graph, cycle: list[int]) -> set[frozenset[int]]:
    pos = {v: i for i, v in enumerate(cycle)}
    return {frozenset((pos[u], pos[v])) for u, v in g.edges}


def is_symmetric(g: Graph, cycle: list[int], sym: tuple[str, int]) -> bool:
    n = g.n
    chords = chord_set(g, cycle)
    return {frozenset(_apply(sym, i, n) for i in c) for c in chords} == chords


def _half_turn_cycles(g: Graph) -> Iterator[list[int]]:
    # positions 0..n-1 along the cycle; position t pairs with t - n/2
    n = g.n
    h = n // 2
    masks = g.adj_masks
    path = [0]

    def ok(t: int, w: int) -> bool:
        if t < h:
            return True
        partner = path[t - h]
        for s in range(t):
            img = (s - h) % n
            if img >= t:
                continue
            a = masks[w] >> path[s] & 1
            b = masks[partner] >> path[img] & 1
            if a != b:
                return False
        return True

    def extend(used: int):
        t = len(path)
        if t == n:
            if masks[path[-1]] & 1 and path[1] < path[-1]:
                yield list(path)
            return
        for w in sorted(g.adj[path[-1]]):
            if used >> w & 1 or not ok(t, w):
                continue
            path.append(w)
            yield from extend(used | 1 << w)
            path.pop()

    if n >= 3:
        yield from extend(1)


def in_S(g: Graph) -> FamilyReport:
    _require_laman(g)
    ev: dict = {}
    rep = FamilyReport("S", False, ev)
    n = g.n
    found_cycle = False
    cycles = _half_turn_cycles(g) if n % 2 == 0 else hamiltonian_cycles(g)
    for cyc in cycles:
        found_cycle = True
        for sym in _symmetries(n):
            if is_symmetric(g, cyc, sym):
                ev["cycle"] = cyc
                ev["symmetry"] = sym[0]
                ev["parameter"] = sym[1]
                if sym[0] == "reflection":
                    # odd n: the axis passes through the vertex at position k/2 mod n
                    ev["axis_vertex_position"] = sym[1] * pow(2, -1, n) % n
                rep.verdict = True
                return rep
    if n % 2 == 0 and not found_cycle:
        found_cycle = next(hamiltonian_cycles(g), None) is not None
    rep.reason = "no symmetric Hamiltonian cycle" if found_cycle else "not Hamiltonian"
    ev["hamiltonian"] = found_cycle
    return rep


def verify_report(g: Graph, rep: FamilyReport) -> bool:
    """Re-check a positive report's evidence independently of how it was found."""
    if not rep.verdict:
        return True
    if rep.family == "S":
        cyc = rep.evidence["cycle"]
        sym = (rep.evidence["symmetry"], rep.evidence["parameter"])
        return is_hamiltonian_cycle(g, cyc) and is_symmetric(g, cyc, sym)
    return rep.evidence["planar"] and rep.evidence["faces"] == g.n - 1


@dataclass
class RankedGraph:
    code: GraphCode
    report: FamilyReport
    count: object = None


def search_family(n: int, family: str, count: bool = False, config: CountConfig | None = None,
                  max_n: int = SEARCH_MAX_N) -> list[RankedGraph]:
    """Members of the family among all Laman graphs on ``n`` vertices, ranked by count."""
    if n > max_n:
        raise ValueError(f"n={n} exceeds the search limit {max_n}")
    test = {"T": in_T, "S": in_S}[family]
    level = None
    for k, lv in generate_levels(n, 2):
        if k == n:
            level = lv
    out = []
    for gc in level.codes():
        g = gc.graph()
        rep = test(g)
        if rep.verdict:
            out.append(RankedGraph(gc, rep))
    if count:
        for r in out:
            r.count = count_realizations(r.code.graph(), 2, config).value
        out.sort(key=lambda r: (-(r.count if isinstance(r.count, int) else -1), r.code.code))
    return out
