"""Generalized secret sharing with prime shares, a Shamir baseline, and the
interval attack on the public polynomial."""

__version__ = "0.1.0"

from .access import AccessStructure, closure_growth_report, monotone_closure
from .attack import critical_values, delta_interval, hardening_report, sturm_count
from .polyarith import (
    Polynomial,
    generate_distinct_primes,
    poly_derivative,
    poly_eval,
    poly_from_roots,
)
from .scheme import (
    PrimeShare,
    PublicPolynomial,
    Secret,
    characteristic_number,
    coalition_product,
    deal,
    reconstruct,
)
from .shamir import ThresholdParams, ThresholdShare, shamir_reconstruct, shamir_split

__all__ = [
    "AccessStructure",
    "closure_growth_report",
    "monotone_closure",
    "critical_values",
    "delta_interval",
    "hardening_report",
    "sturm_count",
    "Polynomial",
    "generate_distinct_primes",
    "poly_derivative",
    "poly_eval",
    "poly_from_roots",
    "PrimeShare",
    "PublicPolynomial",
    "Secret",
    "characteristic_number",
    "coalition_product",
    "deal",
    "reconstruct",
    "ThresholdParams",
    "ThresholdShare",
    "shamir_reconstruct",
    "shamir_split",
]
