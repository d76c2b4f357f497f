"""Polynomial arithmetic over Z_p, Groebner bases and solution counting."""
from .field import DEFAULT_PRIME, DEFAULT_PRIME_FLOOR, PrimeField, default_prime
from .groebner import (
    FLEXIBLE,
    GroebnerStats,
    count_standard_monomials,
    groebner_basis,
    is_groebner,
    is_reduced,
    normal_form,
    quotient_dimension,
    s_polynomial,
)
from .polynomial import GREVLEX, MonomialOrder, Polynomial, PolynomialRing, dump_system, parse_system

__all__ = [
    "DEFAULT_PRIME",
    "DEFAULT_PRIME_FLOOR",
    "FLEXIBLE",
    "GREVLEX",
    "GroebnerStats",
    "MonomialOrder",
    "Polynomial",
    "PolynomialRing",
    "PrimeField",
    "count_standard_monomials",
    "default_prime",
    "dump_system",
    "groebner_basis",
    "is_groebner",
    "is_reduced",
    "normal_form",
    "parse_system",
    "quotient_dimension",
    "s_polynomial",
]
