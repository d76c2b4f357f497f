"""Prime fields Z_p."""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field

from sympy.ntheory import isprime
from sympy.ntheory import sqrt_mod as _sqrt_mod

DEFAULT_PRIME = 2147483629
DEFAULT_PRIME_FLOOR = 1 << 20
PRIME_ENV_VAR = "LAMANBOUNDS_PRIME"


def default_prime() -> int:
    """The default modulus, overridable through ``$LAMANBOUNDS_PRIME``."""
    raw = os.environ.get(PRIME_ENV_VAR)
    return int(raw) if raw else DEFAULT_PRIME


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo a prime ``p``.

    ``floor`` guards against accidentally tiny moduli, where random
    specializations are far from generic.  Tests that want exhaustive
    evaluation pass ``floor=2`` explicitly.
    """

    p: int = field(default_factory=default_prime)
    floor: int = DEFAULT_PRIME_FLOOR

    def __post_init__(self):
        if self.p <= self.floor:
            raise ValueError(f"prime {self.p} is not above the floor {self.floor}")
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p >= 1 << 62:
            raise ValueError("modulus must fit in a machine word")

    def __call__(self, x: int) -> int:
        return x % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def is_square(self, a: int) -> bool:
        a %= self.p
        return a == 0 or self.p == 2 or pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a: int) -> int | None:
        """A square root of ``a``, or ``None`` when ``a`` is a non-residue."""
        a %= self.p
        if a == 0:
            return 0
        return _sqrt_mod(a, self.p)

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.p)

    def sum_of_two_squares(self, a: int, rng: random.Random) -> tuple[int, int]:
        """Random ``(x, y)`` with ``x^2 + y^2 = a`` and ``y != 0`` when possible."""
        a %= self.p
        for _ in range(10_000):
            x = rng.randrange(self.p)
            y = self.sqrt(a - x * x)
            if y is not None and y != 0:
                return x, y
        raise ArithmeticError(f"no representation of {a} as a sum of two squares mod {self.p}")
