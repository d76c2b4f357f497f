"""Sparse multivariate polynomials over a prime field.

Monomials are packed into one Python integer so that the monomial order is
plain integer comparison and multiplication is addition.  Variable ``i``
occupies an 8-bit field at bit ``8*i`` holding ``127 - e_i`` (the top bit of
each field is a guard used by the divisibility test), and the total degree
sits above all variable fields.  Comparing keys then compares total degree
first and, on ties, prefers the smaller exponent in the highest-indexed
variable: graded reverse lexicographic order with ``x1 > x2 > ... > xN``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .field import PrimeField

FIELD_BITS = 8
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
_FIELD_MASK = (1 << FIELD_BITS) - 1


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind != "grevlex":
            raise ValueError(f"unsupported monomial order {self.kind!r}")


GREVLEX = MonomialOrder()


class PolynomialRing:
    """``Z_p[x1, ..., xN]`` with the packed-key monomial encoding."""

    def __init__(self, nvars: int, field: PrimeField, order: MonomialOrder = GREVLEX):
        if nvars < 0:
            raise ValueError("negative variable count")
        self.nvars = nvars
        self.field = field
        self.order = order
        self.p = field.p
        self.shifts = [FIELD_BITS * i for i in range(nvars)]
        self.degshift = FIELD_BITS * nvars
        self.one_key = sum(MAX_EXPONENT << s for s in self.shifts)
        self.field_mask = (1 << self.degshift) - 1
        self.guard = sum(1 << (s + FIELD_BITS - 1) for s in self.shifts)
        self._var_step = [(1 << self.degshift) - (1 << s) for s in self.shifts]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolynomialRing)
            and self.nvars == other.nvars
            and self.p == other.p
            and self.order == other.order
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.p, self.order))

    def __repr__(self) -> str:
        return f"PolynomialRing(nvars={self.nvars}, p={self.p})"

    # -- monomial keys --

    def key(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        total = 0
        k = 0
        for e, s in zip(exps, self.shifts):
            if e < 0:
                raise ValueError("negative exponent")
            total += e
            k |= (MAX_EXPONENT - e) << s
        if total > MAX_EXPONENT:
            raise OverflowError(f"total degree {total} exceeds {MAX_EXPONENT}")
        return k | (total << self.degshift)

    def exponents(self, k: int) -> tuple[int, ...]:
        return tuple(MAX_EXPONENT - ((k >> s) & _FIELD_MASK) for s in self.shifts)

    def degree_of_key(self, k: int) -> int:
        return k >> self.degshift

    def mul_keys(self, a: int, b: int) -> int:
        d = (a >> self.degshift) + (b >> self.degshift)
        if d > MAX_EXPONENT:
            raise OverflowError(f"total degree {d} exceeds {MAX_EXPONENT}")
        return a + b - self.one_key

    def times_var(self, k: int, i: int) -> int:
        return k + self._var_step[i]

    def divides(self, a: int, b: int) -> bool:
        fm, g = self.field_mask, self.guard
        return (((a & fm) | g) - (b & fm)) & g == g

    def lcm(self, a: int, b: int) -> int:
        fa, fb = a & self.field_mask, b & self.field_mask
        k = 0
        d = 0
        for s in self.shifts:
            x = min((fa >> s) & _FIELD_MASK, (fb >> s) & _FIELD_MASK)
            k |= x << s
            d += MAX_EXPONENT - x
        return k | (d << self.degshift)

    # -- constructors --

    def zero(self) -> Polynomial:
        return Polynomial(self, ())

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c: int) -> Polynomial:
        c %= self.p
        return Polynomial(self, ((self.one_key, c),) if c else ())

    def var(self, i: int) -> Polynomial:
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, ((self.key(e), 1),))

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.nvars)]

    def from_dict(self, coeffs: Mapping[Sequence[int], int]) -> Polynomial:
        acc: dict[int, int] = {}
        for e, c in coeffs.items():
            k = self.key(tuple(e))
            acc[k] = (acc.get(k, 0) + c) % self.p
        return Polynomial.from_key_dict(self, acc)

    def from_terms(self, terms: Iterable[tuple[Sequence[int], int]]) -> Polynomial:
        acc: dict[int, int] = {}
        for e, c in terms:
            k = self.key(tuple(e))
            acc[k] = (acc.get(k, 0) + c) % self.p
        return Polynomial.from_key_dict(self, acc)

    # -- text format --

    def format_monomial(self, k: int) -> str:
        parts = [f"x{i + 1}^{e}" for i, e in enumerate(self.exponents(k)) if e]
        return "*".join(parts)

    def parse(self, text: str) -> Polynomial:
        """Inverse of :meth:`Polynomial.dump`: ``c*x1^e1*x3^e3 + c2 + ...``."""
        text = text.strip()
        if text == "0":
            return self.zero()
        acc: dict[int, int] = {}
        for raw in re.split(r"\s+\+\s+", text):
            pieces = raw.strip().split("*")
            c = int(pieces[0])
            e = [0] * self.nvars
            for f in pieces[1:]:
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", f)
                if not m:
                    raise ValueError(f"bad factor {f!r}")
                e[int(m.group(1)) - 1] += int(m.group(2) or 1)
            k = self.key(e)
            acc[k] = (acc.get(k, 0) + c) % self.p
        return Polynomial.from_key_dict(self, acc)


class Polynomial:
    """Immutable polynomial: terms ``(key, coeff)`` in strictly decreasing key order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: tuple[tuple[int, int], ...]):
        self.ring = ring
        self.terms = terms

    @classmethod
    def from_key_dict(cls, ring: PolynomialRing, d: Mapping[int, int]) -> Polynomial:
        return cls(ring, tuple(sorted(((k, c) for k, c in d.items() if c), reverse=True)))

    # -- inspection --

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def lead_key(self) -> int:
        return self.terms[0][0]

    @property
    def lead_coeff(self) -> int:
        return self.terms[0][1]

    @property
    def lead_exponents(self) -> tuple[int, ...]:
        return self.ring.exponents(self.terms[0][0])

    def degree(self) -> int:
        return self.ring.degree_of_key(self.terms[0][0]) if self.terms else -1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == self.ring.one_key)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        ex = self.ring.exponents
        return [(ex(k), c) for k, c in self.terms]

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        total = 0
        for e, c in self.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * pow(x, k, p) % p
            total += v
        return total % p

    # -- arithmetic --

    def _check(self, other: Polynomial):
        if other.ring != self.ring:
            raise ValueError("polynomials from different rings")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.ring.constant(other)
        self._check(other)
        return other

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        p = self.ring.p
        d = dict(self.terms)
        for k, c in other.terms:
            d[k] = (d.get(k, 0) + c) % p
        return Polynomial.from_key_dict(self.ring, d)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        p = self.ring.p
        return Polynomial(self.ring, tuple((k, (-c) % p) for k, c in self.terms))

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, int):
            c0 = other % self.ring.p
            if not c0:
                return self.ring.zero()
            return Polynomial(self.ring, tuple((k, c * c0 % self.ring.p) for k, c in self.terms))
        self._check(other)
        R = self.ring
        p = R.p
        d: dict[int, int] = {}
        for ka, ca in self.terms:
            for kb, cb in other.terms:
                k = R.mul_keys(ka, kb)
                d[k] = (d.get(k, 0) + ca * cb) % p
        return Polynomial.from_key_dict(R, d)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.terms[0][1])
        return self * inv

    def mul_term(self, k: int, c: int) -> Polynomial:
        R = self.ring
        p = R.p
        return Polynomial(R, tuple((R.mul_keys(t, k), a * c % p) for t, a in self.terms if a * c % p))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    # -- text --

    def dump(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, c in self.terms:
            mono = self.ring.format_monomial(k)
            out.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({self.dump()})"


def dump_system(polys: Iterable[Polynomial]) -> str:
    """One polynomial per line."""
    return "".join(f.dump() + "\n" for f in polys)


def parse_system(ring: PolynomialRing, text: str) -> list[Polynomial]:
    return [ring.parse(line) for line in text.splitlines() if line.strip()]
