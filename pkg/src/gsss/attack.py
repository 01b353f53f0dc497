"""Bounding the secret from the public polynomial alone.

y(x) = g(x) + S where g has k distinct real roots. Shifting y vertically by
delta keeps k distinct real roots exactly while every local maximum of
y + delta stays above zero and every local minimum below. That range of
shifts, (delta1, delta2), always contains -S, so the attacker learns

    S in (-delta2, -delta1) = (max of local minima of y, min of local maxima of y).

Everything here is exact: critical points come from Sturm-guided bisection
with rational endpoints, and irrational critical values are enclosed in
rational intervals rather than rounded.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .polyarith import (
    Polynomial,
    integer_content_form,
    poly_derivative,
    poly_divmod,
    poly_eval,
    poly_squarefree,
)

__all__ = [
    "INF",
    "NEG_INF",
    "ZeroPolynomial",
    "DegreeZero",
    "NoFeasibleShift",
    "SturmChain",
    "RootEnclosure",
    "CriticalPoint",
    "DeltaInterval",
    "HardeningReport",
    "sturm_count",
    "isolate_real_roots",
    "critical_values",
    "delta_interval",
    "hardening_report",
    "default_k_cap",
    "format_value",
]

INF = math.inf
NEG_INF = -math.inf

DEFAULT_PRECISION = Fraction(1, 10**6)


class ZeroPolynomial(ValueError):
    pass


class DegreeZero(ValueError):
    pass


class NoFeasibleShift(ValueError):
    """No vertical shift gives the polynomial k distinct real roots."""


def _frac(x):
    if isinstance(x, float) and math.isinf(x):
        return x
    return Fraction(x)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _sign_at(p: Polynomial, x) -> int:
    """Sign of an integer polynomial at a rational or infinite point."""
    coeffs = p.coefficients
    if not coeffs:
        return 0
    if isinstance(x, float):
        lead = _sign(coeffs[-1])
        return lead if x > 0 or p.degree % 2 == 0 else -lead
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    # den^d * p(num/den), den > 0, so the sign is unchanged
    acc, scale = coeffs[-1], 1
    for c in reversed(coeffs[:-1]):
        scale *= den
        acc = acc * num + c * scale
    return _sign(acc)


@dataclass(frozen=True)
class SturmChain:
    """Signed remainder sequence of the square-free part of a polynomial.

    Starts with p and p' when p is already square-free. Every term is scaled
    by a positive constant to primitive integer form, which leaves the signs
    (the only thing Sturm's theorem looks at) unchanged.
    """

    terms: tuple

    @classmethod
    def of(cls, p) -> "SturmChain":
        p = p if isinstance(p, Polynomial) else Polynomial(tuple(p))
        if p.is_zero():
            raise ZeroPolynomial("Sturm chain of the zero polynomial")
        base = integer_content_form(poly_squarefree(p))
        if base.leading < 0:
            base = Polynomial(tuple(-c for c in base.coefficients))
        terms = [base]
        if base.degree >= 1:
            terms.append(integer_content_form(poly_derivative(base)))
            while terms[-1].degree > 0:
                _, rem = poly_divmod(terms[-2], terms[-1])
                if rem.is_zero():
                    break
                terms.append(integer_content_form(Polynomial(tuple(-c for c in rem.coefficients))))
        return cls(tuple(terms))

    @property
    def base(self) -> Polynomial:
        return self.terms[0]

    def variations(self, x) -> int:
        signs = [s for s in (_sign_at(t, x) for t in self.terms) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, lo, hi) -> int:
        """Distinct real roots in (lo, hi]."""
        lo, hi = _frac(lo), _frac(hi)
        if not lo < hi:
            raise ValueError("need lo < hi")
        return self.variations(lo) - self.variations(hi)


def sturm_count(p, lo=NEG_INF, hi=INF) -> int:
    return SturmChain.of(p).count(lo, hi)


def _root_bound(p: Polynomial) -> Fraction:
    """Power of two strictly above every root magnitude (Fujiwara's bound)."""
    coeffs = p.coefficients
    d = p.degree
    lead = abs(Fraction(coeffs[-1]))
    bound = 1
    for i in range(1, d + 1):
        ratio = abs(Fraction(coeffs[d - i])) / lead
        if i == d:
            ratio /= 2
        if ratio:
            top = math.ceil(ratio)
            # 2^ceil(bits/i) >= top^(1/i)
            bound = max(bound, 1 << -(-top.bit_length() // i))
    bound *= 2
    return Fraction(1 << bound.bit_length())


@dataclass(frozen=True)
class RootEnclosure:
    """A real root isolated in ``(lo, hi]``; ``lo == hi`` when found exactly.

    ``path`` lists every isolating interval visited on the way down, outermost
    first; refining further only ever extends it.
    """

    lo: Fraction
    hi: Fraction
    isolating: tuple
    path: tuple = field(repr=False, default=())

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def _rational_root_in(q: Polynomial, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
    # rational roots of a primitive integer polynomial lie on the grid (1/lead) Z
    lead = abs(q.leading)
    first = math.floor(lo * lead) + 1
    last = math.floor(hi * lead)
    for numer in range(first, min(last, first + 1) + 1):
        cand = Fraction(numer, lead)
        if _sign_at(q, cand) == 0:
            return cand
    return None


def _split_point(chain: SturmChain, lo: Fraction, hi: Fraction) -> Fraction:
    """Midpoint, nudged off any root so interval endpoints are never roots."""
    width = hi - lo
    mid = lo + width / 2
    step = width / 4
    while _sign_at(chain.base, mid) == 0:
        mid = lo + width / 2 + step
        step /= 2
    return mid


def isolate_real_roots(p, precision=DEFAULT_PRECISION) -> list:
    """Enclose each distinct real root of ``p`` in an interval of width <= precision.

    Rational roots are returned exactly. Results are sorted by location.
    """
    precision = _frac(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    chain = SturmChain.of(p)
    q = chain.base
    if q.degree < 1:
        return []
    bound = _root_bound(q)
    grid = Fraction(1, 2 * abs(q.leading))
    target = min(precision, grid)

    isolated = []
    stack = [(-bound, bound, chain.count(-bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            isolated.append((lo, hi))
            continue
        mid = _split_point(chain, lo, hi)
        left = chain.count(lo, mid)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))

    out = []
    for lo, hi in isolated:
        path = [(lo, hi)]
        a, b = lo, hi
        while b - a > target:
            mid = _split_point(chain, a, b)
            if chain.count(a, mid):
                b = mid
            else:
                a = mid
            path.append((a, b))
        exact = _rational_root_in(q, a, b)
        if exact is not None:
            out.append(RootEnclosure(exact, exact, (lo, hi), tuple(path)))
        else:
            out.append(RootEnclosure(a, b, (lo, hi), tuple(path)))
    out.sort(key=lambda r: r.lo)
    return out


def _interval_eval(p: Polynomial, lo: Fraction, hi: Fraction):
    """Interval Horner: an enclosure of p over [lo, hi]."""
    coeffs = p.coefficients
    a = b = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


def _centered_enclosure(p: Polynomial, dp: Polynomial, lo: Fraction, hi: Fraction):
    mid = (lo + hi) / 2
    center = Fraction(poly_eval(p, mid))
    dlo, dhi = _interval_eval(dp, lo, hi)
    half = (hi - lo) / 2
    spread = max(abs(dlo), abs(dhi)) * half
    return center - spread, center + spread


@dataclass(frozen=True)
class CriticalPoint:
    """A real root of p' and an enclosure of p there.

    ``kind`` is ``"max"``, ``"min"`` or ``"flat"`` (p' does not change sign).
    """

    location: tuple
    value: tuple
    kind: str

    @property
    def exact(self) -> bool:
        return self.location[0] == self.location[1]


def critical_values(p, precision=DEFAULT_PRECISION) -> list:
    p = p if isinstance(p, Polynomial) else Polynomial(tuple(p))
    if p.degree < 2:
        raise ValueError("critical values need degree >= 2")
    p = Polynomial(tuple(Fraction(c) for c in p.coefficients))
    dp = poly_derivative(p)
    ddp = poly_derivative(dp)
    dp_int = integer_content_form(dp)
    out = []
    for root in isolate_real_roots(dp, precision):
        ilo, ihi = root.isolating
        before, after = _sign_at(dp_int, ilo), _sign_at(dp_int, ihi)
        if before > 0 > after:
            kind = "max"
        elif before < 0 < after:
            kind = "min"
        else:
            kind = "flat"
        if root.exact:
            v = Fraction(poly_eval(p, root.lo))
            out.append(CriticalPoint((root.lo, root.hi), (v, v), kind))
            continue
        vlo, vhi = NEG_INF, INF
        for a, b in root.path:
            pa, pb = Fraction(poly_eval(p, a)), Fraction(poly_eval(p, b))
            clo, chi = _centered_enclosure(p, dp, a, b)
            # monotone on each side of the critical point
            if kind == "max":
                clo = max(clo, pa, pb)
            elif kind == "min":
                chi = min(chi, pa, pb)
            else:
                clo, chi = max(clo, min(pa, pb)), min(chi, max(pa, pb))
            vlo, vhi = max(vlo, clo), min(vhi, chi)
        out.append(CriticalPoint((root.lo, root.hi), (vlo, vhi), kind))
    return out


def format_value(v) -> str:
    if isinstance(v, float) and math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    return str(Fraction(v))


@dataclass(frozen=True)
class DeltaInterval:
    """The shift range (delta1, delta2) and the secret interval it implies.

    ``delta1``/``delta2`` are outer bounds, so ``(secret_low, secret_high)``
    always contains the true leaked interval. The enclosures give the
    two-sided uncertainty on each, zero width when exact.
    """

    delta1: object
    delta2: object
    delta1_enclosure: tuple
    delta2_enclosure: tuple
    k: int

    @property
    def secret_low(self):
        return -self.delta2

    @property
    def secret_high(self):
        return -self.delta1

    @property
    def width(self):
        if isinstance(self.delta1, float) or isinstance(self.delta2, float):
            return INF
        return self.delta2 - self.delta1

    @property
    def exact(self) -> bool:
        return all(e[0] == e[1] for e in (self.delta1_enclosure, self.delta2_enclosure))

    def contains(self, secret) -> bool:
        return self.secret_low < secret < self.secret_high

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "delta1": format_value(self.delta1),
            "delta2": format_value(self.delta2),
            "delta1_enclosure": [format_value(v) for v in self.delta1_enclosure],
            "delta2_enclosure": [format_value(v) for v in self.delta2_enclosure],
            "secret_low": format_value(self.secret_low),
            "secret_high": format_value(self.secret_high),
            "width": format_value(self.width),
            "exact": self.exact,
        }


def delta_interval(public, precision=DEFAULT_PRECISION) -> DeltaInterval:
    poly = getattr(public, "poly", public)
    poly = poly if isinstance(poly, Polynomial) else Polynomial(tuple(poly))
    k = poly.degree
    if k < 1:
        raise DegreeZero("the public polynomial must have degree >= 1")
    if k == 1:
        return DeltaInterval(NEG_INF, INF, (NEG_INF, NEG_INF), (INF, INF), k)
    points = critical_values(poly, precision)
    if len(points) != k - 1 or any(c.kind == "flat" for c in points):
        raise NoFeasibleShift("derivative lacks k - 1 simple real roots; no shift gives k real roots")
    maxima = [c.value for c in points if c.kind == "max"]
    minima = [c.value for c in points if c.kind == "min"]
    # secret_high = min over local maxima; secret_low = max over local minima
    high = (min(v[0] for v in maxima), min(v[1] for v in maxima)) if maxima else (INF, INF)
    low = (max(v[0] for v in minima), max(v[1] for v in minima)) if minima else (NEG_INF, NEG_INF)
    if low[0] >= high[1]:
        raise NoFeasibleShift("local minima exceed local maxima; no shift gives k real roots")
    delta1_enc = (-high[1], -high[0])
    delta2_enc = (-low[1], -low[0])
    return DeltaInterval(delta1_enc[0], delta2_enc[1], delta1_enc, delta2_enc, k)


def default_k_cap(n: int) -> int:
    """Largest comfortable k for n participants: polynomial in n, hence subexponential."""
    return max(8, n**3)


@dataclass(frozen=True)
class HardeningReport:
    interval: DeltaInterval
    bit_length: int
    k: int
    n: int
    warnings: tuple

    def to_json(self) -> dict:
        data = self.interval.to_json()
        data.update(
            {
                "bit_length": self.bit_length,
                "n": self.n,
                "width_approx": _approx(self.interval.width),
                "warnings": list(self.warnings),
            }
        )
        return data


def _approx(v) -> str:
    if isinstance(v, float):
        return format_value(v)
    return f"{float(v):.6g}" if abs(v) < 1e300 else f"~2^{abs(v).numerator.bit_length() - abs(v).denominator.bit_length()}"


def hardening_report(public, shares_meta: dict, precision=DEFAULT_PRECISION, primes=None, k_cap=None) -> HardeningReport:
    """Measure the interval leak and check the parameter guidance.

    ``shares_meta`` carries ``bit_length``, ``k`` and ``n``. When ``primes``
    is given their sizes are checked for uniformity as well.
    """
    interval = delta_interval(public, precision)
    bit_length = int(shares_meta.get("bit_length", 0))
    k = int(shares_meta.get("k", interval.k))
    n = int(shares_meta.get("n", 0))
    warnings = []

    if interval.k != k:
        warnings.append(f"metadata k={k} disagrees with public polynomial degree {interval.k}")
    if math.isinf(interval.secret_low) and math.isinf(interval.secret_high):
        warnings.append("interval unbounded on both sides (attack uninformative)")
    elif math.isinf(interval.secret_high):
        warnings.append("upper side unbounded (attack uninformative on this side)")
    elif math.isinf(interval.secret_low):
        warnings.append("lower side unbounded (attack uninformative on this side)")
    else:
        warnings.append(
            f"secret confined to an interval of width {_approx(interval.width)}; "
            "larger or more spread characteristic numbers widen it"
        )

    if primes is not None:
        sizes = sorted({p.bit_length() for p in primes})
        if len(sizes) > 1:
            warnings.append(f"share primes differ in size ({sizes[0]}..{sizes[-1]} bits)")
        elif bit_length and sizes and sizes[0] != bit_length:
            warnings.append(f"share primes have {sizes[0]} bits, metadata says {bit_length}")
    if bit_length and bit_length < 64:
        warnings.append(f"{bit_length}-bit primes are small enough to factor characteristic numbers")

    cap = k_cap if k_cap is not None else default_k_cap(n)
    if k > cap:
        warnings.append(f"k={k} exceeds the cap of {cap} authorized sets for n={n}")
    elif 4 * k >= 3 * cap:
        warnings.append(f"k={k} is approaching the cap of {cap} authorized sets for n={n}")
    return HardeningReport(interval, bit_length, k, n, tuple(warnings))
