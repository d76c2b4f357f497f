"""Lower bounds on the maximal number of realizations from gluing constructions.

Gluing copies of a base graph ``G`` along a shared rigid subgraph ``H`` (an
edge, a triangle, a tetrahedron, ...) multiplies realization counts by
``L(G)/L(H)`` per copy, and each leftover vertex is attached by a degree-d
step that doubles the count.  All bound values are exact integers; growth
rates are produced in high-precision decimal arithmetic and rounded half-up
to five places for display.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence

from .analysis import contains_subgraph
from .graph import GraphCode, complete_graph

CONSTRUCTIONS = ("caterpillar", "fan", "genfan", "genfan3d", "theorem2d", "theorem3d")

# glued unit, base size and L(G) behind the two headline theorems
THEOREM_2D = dict(base_size=18, base_count=1953816, glue_size=3, glue_count=2)
THEOREM_3D = dict(base_size=10, base_count=2560, glue_size=3, glue_count=1)
THEOREM_2D_BASE = GraphCode(18, 9061092056503516236392931137633162134437921)
THEOREM_3D_BASE = GraphCode(10, 3559487592083)

GLUE_NOTE = (
    "assumes the realizations of G fall into equally sized classes over those of H; "
    "unequal classes only raise the true count"
)


@dataclass(frozen=True)
class BoundSpec:
    """Base graph ``G`` (|V|, L(G)) glued along ``H`` (|W|, L(H)), evaluated at ``n``."""

    dim: int
    base_size: int
    base_count: int
    glue_size: int
    glue_count: int
    n: int
    construction: str = "genfan"
    base_code: GraphCode | None = None
    glue_code: GraphCode | None = None

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ValueError("dimension must be 2 or 3")
        if not self.glue_size < self.base_size:
            raise ValueError(f"need |W| < |V|, got {self.glue_size} and {self.base_size}")
        if not self.base_count >= self.glue_count >= 1:
            raise ValueError("need L(G) >= L(H) >= 1")

    def at(self, n: int) -> BoundSpec:
        return replace(self, n=n)


@dataclass(frozen=True)
class BoundResult:
    spec: BoundSpec
    value: int
    k: int  # number of glued copies
    padding: int  # vertices added by doubling steps
    fractional: bool = False  # exact value was not an integer and was floored
    note: str = ""

    @property
    def rate(self) -> float:
        return float(growth_rate(self.spec))

    def recompute(self) -> Fraction:
        s = self.spec
        return 2**self.padding * s.glue_count * Fraction(s.base_count, s.glue_count) ** self.k


def growth_rate(spec: BoundSpec, places: int | None = None) -> Decimal:
    """``(L(G)/L(H))^(1/(|V|-|W|))``, optionally rounded half-up to ``places``."""
    with localcontext() as ctx:
        ctx.prec = 60
        ratio = Decimal(spec.base_count) / Decimal(spec.glue_count)
        r = ratio ** (Decimal(1) / Decimal(spec.base_size - spec.glue_size))
        if places is None:
            return +r
        return r.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


def rounded_rate(base_count: int, glue_count: int, base_size: int, glue_size: int,
                 places: int = 5) -> Decimal:
    spec = BoundSpec(2, base_size, base_count, glue_size, glue_count, base_size)
    return growth_rate(spec, places)


def _evaluate(spec: BoundSpec) -> BoundResult:
    step = spec.base_size - spec.glue_size
    span = spec.n - spec.glue_size
    if span < 0:
        raise ValueError(f"n={spec.n} is below the glue size {spec.glue_size}")
    k, padding = divmod(span, step)
    exact = 2**padding * spec.glue_count * Fraction(spec.base_count, spec.glue_count) ** k
    value = exact.numerator // exact.denominator
    note = GLUE_NOTE if spec.glue_count > 1 else ""
    return BoundResult(spec, value, k, padding, fractional=exact.denominator != 1, note=note)


def caterpillar_bound(spec: BoundSpec) -> BoundResult:
    """``2^((n-2) mod (|V|-2)) * L(G)^floor((n-2)/(|V|-2))``: copies share one edge."""
    if spec.n < 2:
        raise ValueError("caterpillar bound needs n >= 2")
    if spec.glue_size != 2 or spec.glue_count != 1:
        raise ValueError("caterpillar construction glues along an edge (|W|=2, L(H)=1)")
    return _evaluate(spec)


def fan_bound(spec: BoundSpec) -> BoundResult:
    """``2^((n-3) mod (|V|-3)) * 2 * (L(G)/2)^floor((n-3)/(|V|-3))``: copies share a triangle."""
    if spec.glue_size != 3 or spec.glue_count != 2:
        raise ValueError("fan construction glues along a triangle (|W|=3, L(H)=2)")
    if spec.base_code is not None and not contains_subgraph(spec.base_code.graph(), complete_graph(3)):
        raise ValueError(f"base graph {spec.base_code} has no triangle to glue along")
    if spec.n < 3:
        raise ValueError("fan bound needs n >= 3")
    return _evaluate(spec)


def _check_glue(spec: BoundSpec):
    if spec.base_code is not None and spec.glue_code is not None:
        if not contains_subgraph(spec.base_code.graph(), spec.glue_code.graph()):
            raise ValueError(f"glue graph {spec.glue_code} is not a subgraph of {spec.base_code}")


def generalized_fan_bound(spec: BoundSpec) -> BoundResult:
    """Copies of ``G`` glued along a common rigid subgraph ``H``."""
    if spec.dim != 2:
        raise ValueError("use generalized_fan_bound_3d for spatial counts")
    _check_glue(spec)
    return _evaluate(spec)


def generalized_fan_bound_3d(spec: BoundSpec) -> BoundResult:
    if spec.dim != 3:
        raise ValueError("generalized_fan_bound_3d expects spatial counts")
    _check_glue(spec)
    return _evaluate(spec)


def theorem_spec(dim: int, n: int) -> BoundSpec:
    if dim == 2:
        return BoundSpec(2, n=n, construction="theorem2d", base_code=THEOREM_2D_BASE,
                         glue_code=GraphCode(3, 7), **THEOREM_2D)
    if dim == 3:
        return BoundSpec(3, n=n, construction="theorem3d", base_code=THEOREM_3D_BASE,
                         glue_code=GraphCode(3, 7), **THEOREM_3D)
    raise ValueError("dimension must be 2 or 3")


def theorem_bound(dim: int, n: int) -> int:
    """Best asymptotic bound: ``2*2^((n-3) mod 15)*976908^floor((n-3)/15)`` in the
    plane, ``2^((n-3) mod 7)*2560^floor((n-3)/7)`` in space."""
    if n < 3:
        raise ValueError("theorem bounds need n >= 3")
    return _evaluate(theorem_spec(dim, n)).value


_DISPATCH = {
    "caterpillar": caterpillar_bound,
    "fan": fan_bound,
    "genfan": generalized_fan_bound,
    "genfan3d": generalized_fan_bound_3d,
    "theorem2d": _evaluate,
    "theorem3d": _evaluate,
}


def evaluate(spec: BoundSpec) -> BoundResult:
    return _DISPATCH[spec.construction](spec)


# -- tables ---------------------------------------------------------------------

CSV_COLUMNS = ("n", "construction", "base_code", "glue_code", "bound", "rate")


@dataclass(frozen=True)
class GrowthRow:
    n: int
    construction: str
    base_code: GraphCode | None
    glue_code: GraphCode | None
    bound: int
    rate: Decimal

    def as_csv(self) -> list[str]:
        def fmt(c):
            return "" if c is None else f"{c.n}:{c.code}"
        return [str(self.n), self.construction, fmt(self.base_code), fmt(self.glue_code),
                str(self.bound), str(self.rate)]


def growth_table(specs: Iterable[BoundSpec], n_values: Sequence[int] | None = None,
                 places: int = 5) -> list[GrowthRow]:
    """One row per (spec, n); without ``n_values`` each spec is used at its own ``n``."""
    rows = []
    for spec in specs:
        for n in n_values if n_values is not None else [spec.n]:
            s = spec.at(n)
            res = evaluate(s)
            rows.append(GrowthRow(n, s.construction, s.base_code, s.glue_code, res.value,
                                  growth_rate(s, places)))
    return rows


def to_csv(rows: Iterable[GrowthRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.as_csv())
    return buf.getvalue()


def plot_rates(rows: Sequence[GrowthRow], path: str) -> None:
    """Line chart of rate against n, one line per construction."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for name in dict.fromkeys(r.construction for r in rows):
        pts = sorted((r.n, float(r.rate)) for r in rows if r.construction == name)
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=name)
    ax.set_xlabel("n")
    ax.set_ylabel("growth rate")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
