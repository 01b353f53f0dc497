"""Exact integer/rational polynomial arithmetic and seeded prime generation.

Integers are plain Python ints and rationals are :class:`fractions.Fraction`,
so nothing here ever rounds. Polynomials store coefficients in ascending
degree order.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

from .rng import HashDRBG

__all__ = [
    "Polynomial",
    "InsufficientPrimes",
    "InvalidBitLength",
    "MR_ROUNDS",
    "is_probable_prime",
    "generate_distinct_primes",
    "poly_from_roots",
    "poly_eval",
    "poly_derivative",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_scale",
    "poly_divmod",
    "poly_gcd",
    "poly_squarefree",
    "integer_content_form",
]

MR_ROUNDS = 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)

# Ranges up to this many bits are sieved to decide whether enough primes exist.
_EXACT_COUNT_BITS = 20


class InsufficientPrimes(ValueError):
    """Fewer distinct primes of the requested size exist than were asked for."""


class InvalidBitLength(ValueError):
    pass


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial, ascending coefficients, trailing zeros stripped.

    The zero polynomial has no coefficients and degree -1.
    """

    coefficients: tuple = ()

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self):
        return self.coefficients[-1] if self.coefficients else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        return poly_eval(self, x)

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def __repr__(self):
        return f"Polynomial({list(self.coefficients)!r})"


def _as_poly(p) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial(tuple(p))


# --- primes -----------------------------------------------------------------

def is_probable_prime(n: int, rounds: int = MR_ROUNDS, rng=None) -> bool:
    """Miller-Rabin with ``rounds`` random witnesses drawn from ``rng``."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _SMALL_PRIMES[-1] ** 2:
        return True
    if rng is None:
        rng = HashDRBG(n.to_bytes((n.bit_length() + 7) // 8, "big"), domain=b"mr")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _count_primes_with_bits(bit_length: int) -> int:
    lo, hi = 1 << (bit_length - 1), 1 << bit_length
    sieve = bytearray([1]) * hi
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(hi - 1) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytes(len(range(p * p, hi, p)))
    return sum(sieve[lo:hi])


def _available_primes(bit_length: int) -> int:
    if bit_length <= _EXACT_COUNT_BITS:
        return _count_primes_with_bits(bit_length)
    # Conservative lower bound on primes in [2^(b-1), 2^b): density exceeds 1/(b ln 2) there.
    return (1 << (bit_length - 1)) // (2 * bit_length)


def generate_distinct_primes(count: int, bit_length: int, seed) -> list:
    """Return ``count`` distinct probable primes with exactly ``bit_length`` bits.

    Deterministic in ``seed``. Candidates and Miller-Rabin witnesses come
    from the same seeded generator; colliding draws are resampled.
    """
    if bit_length < 2:
        raise InvalidBitLength(f"bit_length must be >= 2, got {bit_length}")
    if count < 1:
        raise ValueError("count must be >= 1")
    available = _available_primes(bit_length)
    if count > available:
        raise InsufficientPrimes(
            f"requested {count} distinct {bit_length}-bit primes, only {available} exist"
        )
    rng = HashDRBG(seed, domain=b"primes")
    top = 1 << (bit_length - 1)
    issued = set()
    primes = []
    while len(primes) < count:
        candidate = top | rng.getrandbits(bit_length - 1)
        if bit_length > 2:
            candidate |= 1
        if candidate in issued:
            continue
        if is_probable_prime(candidate, MR_ROUNDS, rng):
            issued.add(candidate)
            primes.append(candidate)
    return primes


# --- polynomials --------------------------------------------------------------

def poly_from_roots(roots: Iterable[int], constant_offset: int = 0) -> Polynomial:
    """Expand prod(x - root) and add ``constant_offset`` to the constant term.

    With no roots the result is the constant polynomial ``constant_offset``.
    """
    roots = list(roots)
    if not roots:
        return Polynomial((constant_offset,))
    coeffs = [1]
    for root in roots:
        # multiply by (x - root): new[i] = old[i-1] - root * old[i]
        shifted = [0] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= root * c
        coeffs = shifted
    coeffs[0] += constant_offset
    return Polynomial(tuple(coeffs))


def poly_eval(p, x):
    """Horner evaluation: one multiplication per degree."""
    coeffs = _as_poly(p).coefficients
    if not coeffs:
        return 0
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def poly_derivative(p) -> Polynomial:
    coeffs = _as_poly(p).coefficients
    return Polynomial(tuple(i * c for i, c in enumerate(coeffs) if i))


def poly_add(p, q) -> Polynomial:
    a, b = _as_poly(p).coefficients, _as_poly(q).coefficients
    if len(a) < len(b):
        a, b = b, a
    return Polynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))


def poly_scale(p, factor) -> Polynomial:
    return Polynomial(tuple(c * factor for c in _as_poly(p).coefficients))


def poly_sub(p, q) -> Polynomial:
    return poly_add(p, poly_scale(q, -1))


def poly_mul(p, q) -> Polynomial:
    a, b = _as_poly(p).coefficients, _as_poly(q).coefficients
    if not a or not b:
        return Polynomial()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return Polynomial(tuple(out))


def poly_divmod(p, q):
    """Euclidean division over the rationals; returns (quotient, remainder)."""
    num = [Fraction(c) for c in _as_poly(p).coefficients]
    den = _as_poly(q).coefficients
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(den[-1])
    dq = len(den) - 1
    if len(num) - 1 < dq:
        return Polynomial(), Polynomial(tuple(num))
    quot = [Fraction(0)] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i] / lead
        if c:
            quot[i - dq] = c
            for j, d in enumerate(den):
                num[i - dq + j] -= c * d
    return Polynomial(tuple(quot)), Polynomial(tuple(num[:dq]))


def _monic(p: Polynomial) -> Polynomial:
    lead = Fraction(p.leading)
    return Polynomial(tuple(Fraction(c) / lead for c in p.coefficients))


def poly_gcd(p, q) -> Polynomial:
    """Monic gcd over the rationals (zero if both inputs are zero)."""
    a, b = _as_poly(p), _as_poly(q)
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a if a.is_zero() else _monic(a)


def poly_squarefree(p) -> Polynomial:
    """p / gcd(p, p'): same distinct roots, all simple."""
    p = _as_poly(p)
    if p.degree < 1:
        return p
    g = poly_gcd(p, poly_derivative(p))
    if g.degree < 1:
        return p
    return poly_divmod(p, g)[0]


def integer_content_form(p: Sequence) -> Polynomial:
    """Scale a rational polynomial by a positive constant to primitive integer form."""
    coeffs = [Fraction(c) for c in _as_poly(p).coefficients]
    if not coeffs:
        return Polynomial()
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = gcd(*ints)
    return Polynomial(tuple(c // g for c in ints))
