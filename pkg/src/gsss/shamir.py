"""(n, t) threshold sharing over GF(q), used as a baseline."""

from dataclasses import dataclass
from typing import Sequence

from .polyarith import is_probable_prime
from .rng import HashDRBG

__all__ = [
    "MERSENNE_61",
    "ThresholdParams",
    "ThresholdShare",
    "InvalidParams",
    "NotEnoughShares",
    "DuplicateX",
    "shamir_split",
    "shamir_reconstruct",
    "interpolate",
    "consistent_polynomial",
]

MERSENNE_61 = (1 << 61) - 1


class InvalidParams(ValueError):
    pass


class NotEnoughShares(ValueError):
    pass


class DuplicateX(ValueError):
    pass


@dataclass(frozen=True)
class ThresholdParams:
    n: int
    t: int
    q: int = MERSENNE_61

    def __post_init__(self):
        if not 1 <= self.t <= self.n < self.q:
            raise InvalidParams(f"need 1 <= t <= n < q, got n={self.n} t={self.t} q={self.q}")
        if not is_probable_prime(self.q):
            raise InvalidParams(f"field modulus {self.q} is not prime")


@dataclass(frozen=True)
class ThresholdShare:
    x: int
    y: int

    def to_json(self, params: ThresholdParams) -> dict:
        return {"x": str(self.x), "y": str(self.y), "q": str(params.q), "t": params.t}

    @staticmethod
    def from_json(data):
        """Return ``(share, q, t)`` from the share JSON object."""
        try:
            share = ThresholdShare(int(data["x"]), int(data["y"]))
            q, t = int(data["q"]), data["t"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed threshold share: {exc}") from None
        if isinstance(t, bool) or not isinstance(t, int):
            raise ValueError("malformed threshold share: 't' must be an integer")
        return share, q, t


def _eval_mod(coeffs, x, q):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % q
    return acc


def shamir_split(secret: int, params: ThresholdParams, seed) -> list:
    if not 0 <= secret < params.q:
        raise InvalidParams(f"secret must lie in [0, {params.q})")
    rng = HashDRBG(seed, domain=b"shamir")
    coeffs = [secret] + [rng.randrange(params.q) for _ in range(params.t - 1)]
    return [ThresholdShare(x, _eval_mod(coeffs, x, params.q)) for x in range(1, params.n + 1)]


def interpolate(points: Sequence, at: int, q: int) -> int:
    """Lagrange interpolation over GF(q) evaluated at ``at``."""
    total = 0
    for j, (xj, yj) in enumerate(points):
        num = den = 1
        for m, (xm, _) in enumerate(points):
            if m != j:
                num = num * (at - xm) % q
                den = den * (xj - xm) % q
        total = (total + yj * num * pow(den, -1, q)) % q
    return total


def _check_points(shares):
    xs = [s.x for s in shares]
    if len(set(xs)) != len(xs):
        raise DuplicateX("shares with repeated x coordinate")


def shamir_reconstruct(shares: Sequence[ThresholdShare], params: ThresholdParams) -> int:
    _check_points(shares)
    if len(shares) < params.t:
        raise NotEnoughShares(f"need {params.t} shares, got {len(shares)}")
    points = [(s.x % params.q, s.y % params.q) for s in shares[: params.t]]
    return interpolate(points, 0, params.q)


def _poly_mul_linear(coeffs, root, q):
    out = [0] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i + 1] = (out[i + 1] + c) % q
        out[i] = (out[i] - root * c) % q
    return out


def consistent_polynomial(shares: Sequence[ThresholdShare], candidate: int, params: ThresholdParams) -> list:
    """Coefficients (ascending, length t) of a polynomial of degree < t that
    passes through ``shares`` and has constant term ``candidate``.

    With t - 1 shares such a polynomial exists for every candidate, which is
    why fewer than t shares say nothing about the secret.
    """
    _check_points(shares)
    points = [(0, candidate % params.q)] + [(s.x % params.q, s.y % params.q) for s in shares]
    if any(x == 0 for x, _ in points[1:]):
        raise DuplicateX("share at x = 0 collides with the secret position")
    if len(points) > params.t:
        raise InvalidParams("more than t - 1 shares already fix the polynomial")
    q = params.q
    coeffs = [0] * params.t
    for j, (xj, yj) in enumerate(points):
        basis, den = [1], 1
        for m, (xm, _) in enumerate(points):
            if m != j:
                basis = _poly_mul_linear(basis, xm, q)
                den = den * (xj - xm) % q
        scale = yj * pow(den, -1, q) % q
        for i, b in enumerate(basis):
            coeffs[i] = (coeffs[i] + scale * b) % q
    return coeffs

