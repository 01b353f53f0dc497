"""Timing of public-polynomial evaluation against the degree k."""

import statistics
import time

from .polyarith import Polynomial, generate_distinct_primes
from .rng import HashDRBG
from .scheme import PublicPolynomial, reconstruct

__all__ = ["synthetic_instance", "time_reconstruct", "run_bench"]


def synthetic_instance(k: int, coeff_bits: int = 64, seed=b"bench"):
    """Monic degree-k polynomial with ``coeff_bits``-bit coefficients, plus a
    coalition product r of two ``coeff_bits // 2``-bit primes."""
    rng = HashDRBG(seed, domain=b"bench" + k.to_bytes(4, "big"))
    coeffs = tuple(rng.getrandbits(coeff_bits) for _ in range(k)) + (1,)
    p, q = generate_distinct_primes(2, max(2, coeff_bits // 2), seed)
    return PublicPolynomial(Polynomial(coeffs), k), p * q


def time_reconstruct(public: PublicPolynomial, r: int, repeat: int = 5) -> int:
    """Median wall time of one reconstruct call, in nanoseconds."""
    samples = []
    for _ in range(repeat):
        start = time.perf_counter_ns()
        reconstruct(public, r)
        samples.append(time.perf_counter_ns() - start)
    return int(statistics.median(samples))


def run_bench(k_list, coeff_bits: int = 64, repeat: int = 5, seed=b"bench"):
    rows = []
    for k in k_list:
        public, r = synthetic_instance(k, coeff_bits, seed)
        rows.append((k, time_reconstruct(public, r, repeat)))
    return rows
