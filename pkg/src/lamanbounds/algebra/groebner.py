"""Buchberger's algorithm over Z_p and zero-dimensional solution counting.

Pairs are processed by the normal strategy (smallest lcm first) and pruned
with the Gebauer-Moller criteria.  Reduction accumulates into a dict with a
max-heap of pending monomials; the reducer chosen for each monomial is cached
until the basis changes.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .polynomial import MAX_EXPONENT, Polynomial, PolynomialRing


class _Flexible:
    """Marker for a positive-dimensional solution set."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "FLEXIBLE"

    def __str__(self) -> str:
        return "flexible"

    def __reduce__(self):
        return (_Flexible, ())


FLEXIBLE = _Flexible()


@dataclass
class GroebnerStats:
    reductions: int = 0
    zero_reductions: int = 0
    pairs_created: int = 0
    max_degree: int = 0
    basis_size: int = 0


# a monic basis element: lead key plus the tail terms
_Elem = tuple[int, list[tuple[int, int]]]


class _Engine:
    def __init__(self, ring: PolynomialRing):
        self.R = ring
        self.elems: list[_Elem] = []
        self.leads: list[int] = []
        self.guarded: list[int] = []  # lead fields with guard bits, for divisibility
        self.live: list[int] = []
        self.cache: dict[int, int] = {}

    def add(self, terms: list[tuple[int, int]]) -> int:
        R = self.R
        p = R.p
        inv = pow(terms[0][1], -1, p)
        lt = terms[0][0]
        tail = [(k, c * inv % p) for k, c in terms[1:]]
        idx = len(self.elems)
        self.elems.append((lt, tail))
        self.leads.append(lt)
        self.guarded.append((lt & R.field_mask) | R.guard)
        self.cache.clear()
        div = R.divides
        self.live = [i for i in self.live if not div(lt, self.leads[i])]
        self.live.append(idx)
        return idx

    def _find(self, k: int) -> int:
        kf = k & self.R.field_mask
        g = self.R.guard
        leads, guarded = self.leads, self.guarded
        for i in self.live:
            if leads[i] <= k and ((guarded[i] - kf) & g) == g:
                return i
        return -1

    def reduce(self, terms) -> list[tuple[int, int]]:
        """Full reduction by the live elements; returns terms in decreasing order."""
        p = self.R.p
        h = dict(terms)
        heap = [-k for k in h]
        heapq.heapify(heap)
        out = []
        push, pop = heapq.heappush, heapq.heappop
        cache = self.cache
        get = cache.get
        find = self._find
        elems, leads = self.elems, self.leads
        while heap:
            k = -pop(heap)
            c = h.pop(k, 0)
            if not c:
                continue
            i = get(k)
            if i is None:
                i = find(k)
                cache[k] = i
            if i < 0:
                out.append((k, c))
                continue
            q = k - leads[i]
            hg = h.get
            for t, a in elems[i][1]:
                kk = t + q
                v = hg(kk)
                if v is None:
                    h[kk] = (-c * a) % p
                    push(heap, -kk)
                else:
                    v = (v - c * a) % p
                    if v:
                        h[kk] = v
                    else:
                        del h[kk]
        return out


def _spoly_terms(R: PolynomialRing, fi: _Elem, fj: _Elem, L: int) -> dict[int, int]:
    p = R.p
    qi, qj = L - fi[0], L - fj[0]
    s: dict[int, int] = {}
    for t, a in fi[1]:
        s[t + qi] = a
    for t, a in fj[1]:
        k = t + qj
        v = (s.get(k, 0) - a) % p
        if v:
            s[k] = v
        else:
            s.pop(k, None)
    return s


def groebner_basis(
    generators: Sequence[Polynomial],
    ring: PolynomialRing | None = None,
    stats: GroebnerStats | None = None,
) -> list[Polynomial]:
    """Reduced Groebner basis in grevlex order, sorted by increasing lead."""
    gens = [f for f in generators if f]
    if ring is None:
        if not generators:
            return []
        ring = generators[0].ring
    for f in gens:
        if f.ring != ring:
            raise ValueError("generators live in different rings")
    if not gens:
        return []
    R = ring
    CK, DS = R.one_key, R.degshift
    lcm, div = R.lcm, R.divides
    eng = _Engine(R)
    st = stats if stats is not None else GroebnerStats()
    pairs: list[tuple[int, int, int, int]] = []
    live_pairs: dict[tuple[int, int], int] = {}

    def update(terms) -> bool:
        if terms[0][0] == CK:
            return True  # unit ideal
        old_live = list(eng.live)
        lt = terms[0][0]
        t = eng.add(terms)
        leads = eng.leads
        # new pairs: drop those whose lcm is a multiple of another new lcm, then coprime ones
        cand = sorted(((lcm(leads[i], lt), i) for i in old_live))
        kept: list[tuple[int, int]] = []
        for L, i in cand:
            if not any(div(L2, L) for L2, _ in kept):
                kept.append((L, i))
        # old pairs made redundant by the new lead
        for key in list(live_pairs):
            i, j = key
            L = live_pairs[key]
            if div(lt, L) and lcm(leads[i], lt) != L and lcm(leads[j], lt) != L:
                del live_pairs[key]
        for L, i in kept:
            if L == leads[i] + lt - CK:
                continue
            d = L >> DS
            if d > MAX_EXPONENT:
                raise OverflowError(f"pair degree {d} exceeds {MAX_EXPONENT}")
            live_pairs[(i, t)] = L
            heapq.heappush(pairs, (d, L, i, t))
            st.pairs_created += 1
        return False

    for f in gens:
        r = eng.reduce(f.terms)
        st.reductions += 1
        if r and update(r):
            st.basis_size = 1
            return [R.one()]
    while pairs:
        d, L, i, j = heapq.heappop(pairs)
        if live_pairs.pop((i, j), None) is None:
            continue
        st.max_degree = max(st.max_degree, d)
        s = _spoly_terms(R, eng.elems[i], eng.elems[j], L)
        st.reductions += 1
        if not s:
            st.zero_reductions += 1
            continue
        r = eng.reduce(s.items())
        if not r:
            st.zero_reductions += 1
            continue
        if update(r):
            st.basis_size = 1
            return [R.one()]
    # interreduce tails against the (minimal) live set
    basis = []
    for i in sorted(eng.live, key=lambda i: eng.leads[i]):
        lt, tail = eng.elems[i]
        rest = eng.reduce(tail) if tail else []
        basis.append(Polynomial(R, ((lt, 1), *rest)))
    st.basis_size = len(basis)
    return basis


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Remainder of full reduction of ``f`` by ``basis``."""
    R = f.ring
    eng = _Engine(R)
    for g in basis:
        if g:
            eng.elems.append((g.lead_key, list(g.monic().terms[1:])))
            eng.leads.append(g.lead_key)
            eng.guarded.append((g.lead_key & R.field_mask) | R.guard)
            eng.live.append(len(eng.elems) - 1)
    return Polynomial(R, tuple(eng.reduce(f.terms)))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    R = f.ring
    fm, gm = f.monic(), g.monic()
    L = R.lcm(f.lead_key, g.lead_key)
    s = _spoly_terms(R, (fm.lead_key, list(fm.terms[1:])), (gm.lead_key, list(gm.terms[1:])), L)
    return Polynomial.from_key_dict(R, s)


def is_groebner(basis: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = [g for g in basis if g]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if normal_form(s_polynomial(basis[a], basis[b]), basis):
                return False
    return True


def is_reduced(basis: Sequence[Polynomial]) -> bool:
    """Monic, and no term of any element is divisible by another element's lead."""
    if not basis:
        return True
    R = basis[0].ring
    for i, g in enumerate(basis):
        if not g or g.lead_coeff != 1:
            return False
        for j, h in enumerate(basis):
            if i == j:
                continue
            if any(R.divides(h.lead_key, k) for k, _ in g.terms):
                return False
    return True


def quotient_dimension(basis: Sequence[Polynomial]) -> int | _Flexible:
    """Number of standard monomials, or ``FLEXIBLE`` when there are infinitely many."""
    basis = [g for g in basis if g]
    if not basis:
        return FLEXIBLE  # zero ideal; callers with no variables never get here
    R = basis[0].ring
    nv = R.nvars
    leads = [g.lead_exponents for g in basis]
    if any(not any(e) for e in leads):
        return 0
    pure = [None] * nv
    for e in leads:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            i = nz[0]
            pure[i] = e[i] if pure[i] is None else min(pure[i], e[i])
    if nv == 0:
        return 1
    if any(x is None for x in pure):
        return FLEXIBLE
    return count_standard_monomials(leads, nv)


def count_standard_monomials(leads: Sequence[Sequence[int]], nvars: int) -> int:
    """Size of the finite staircase of a monomial ideal given by its generators.

    Recurses over variables: after fixing the first ``i`` exponents only the
    generators compatible with that prefix still matter.
    """
    memo: dict[tuple, int] = {}

    def count(gens: tuple[tuple[int, ...], ...], i: int) -> int:
        if any(not any(e[i:]) for e in gens):
            return 0
        if i == nvars:
            return 1
        key = (gens, i)
        if key in memo:
            return memo[key]
        bound = min(e[i] for e in gens if not any(e[i + 1 :]))
        total = 0
        for a in range(bound):
            total += count(tuple(e for e in gens if e[i] <= a), i + 1)
        memo[key] = total
        return total

    return count(tuple(sorted({tuple(e) for e in leads})), 0)
