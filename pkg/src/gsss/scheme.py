"""Generalized secret sharing with prime shares.

Each participant receives a distinct prime. Every authorized set is
identified by the product of its members' primes (its characteristic number),
and the dealer publishes the expanded polynomial

    y(x) = (x - c_1)(x - c_2)...(x - c_k) + S

A coalition multiplies its primes into ``r`` and evaluates ``y(r)``. By
unique factorization ``r`` equals some ``c_i`` exactly when the coalition is
one of the authorized sets, so only those recover ``S``; every other
coalition, including supersets of authorized sets, gets an unrelated value.
Nothing in the output tells the two cases apart.
"""

from dataclasses import dataclass
from math import prod
from typing import Iterable, Mapping, Optional

from .access import AccessStructure, StructureInvalid
from .polyarith import (
    Polynomial,
    generate_distinct_primes,
    is_probable_prime,
    poly_eval,
    poly_from_roots,
)

__all__ = [
    "PrimeShare",
    "Secret",
    "CharacteristicNumber",
    "PublicPolynomial",
    "Dealing",
    "EmptySubset",
    "EmptyCoalition",
    "UnknownParticipant",
    "DuplicateShare",
    "ShareFormatError",
    "characteristic_number",
    "deal",
    "coalition_product",
    "reconstruct",
]


class EmptySubset(ValueError):
    pass


class EmptyCoalition(ValueError):
    pass


class UnknownParticipant(KeyError):
    pass


class DuplicateShare(ValueError):
    pass


class ShareFormatError(ValueError):
    pass


def _parse_int(value, what):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ShareFormatError(f"{what} must be a decimal string")
    try:
        return int(value)
    except ValueError:
        raise ShareFormatError(f"{what} is not a decimal integer: {value!r}") from None


@dataclass(frozen=True)
class PrimeShare:
    participant: str
    prime: int

    def to_json(self) -> dict:
        return {"participant": self.participant, "prime": str(self.prime)}

    @classmethod
    def from_json(cls, data) -> "PrimeShare":
        if not isinstance(data, dict) or not isinstance(data.get("participant"), str):
            raise ShareFormatError("share must be an object with a 'participant' string")
        return cls(data["participant"], _parse_int(data.get("prime"), "prime"))


@dataclass(frozen=True)
class Secret:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("secret must be a non-negative integer")

    @classmethod
    def from_bytes(cls, data: bytes) -> "Secret":
        return cls(int.from_bytes(data, "big"))

    def to_bytes(self, length: Optional[int] = None) -> bytes:
        if length is None:
            length = max(1, (self.value.bit_length() + 7) // 8)
        return self.value.to_bytes(length, "big")

    @classmethod
    def parse(cls, text: str) -> "Secret":
        """Decimal, or ``0x``-prefixed hex bytes decoded big-endian."""
        text = text.strip()
        if text.lower().startswith("0x"):
            digits = text[2:]
            if len(digits) % 2:
                digits = "0" + digits
            return cls.from_bytes(bytes.fromhex(digits))
        return cls(int(text, 10))


@dataclass(frozen=True)
class CharacteristicNumber:
    subset: frozenset
    value: int


@dataclass(frozen=True)
class PublicPolynomial:
    poly: Polynomial
    k: int

    def __post_init__(self):
        if self.poly.degree != self.k:
            raise ValueError(f"public polynomial has degree {self.poly.degree}, expected k={self.k}")
        if not self.poly.is_monic():
            raise ValueError("public polynomial must be monic")

    @property
    def coefficients(self) -> tuple:
        return self.poly.coefficients

    def to_json(self) -> dict:
        return {"k": self.k, "coefficients": [str(c) for c in self.poly.coefficients]}

    @classmethod
    def from_json(cls, data) -> "PublicPolynomial":
        if not isinstance(data, dict) or not isinstance(data.get("coefficients"), list):
            raise ShareFormatError("public polynomial must have a 'coefficients' list")
        k = data.get("k")
        if isinstance(k, bool) or not isinstance(k, int):
            raise ShareFormatError("public polynomial 'k' must be an integer")
        coeffs = tuple(_parse_int(c, "coefficient") for c in data["coefficients"])
        try:
            return cls(Polynomial(coeffs), k)
        except ValueError as exc:
            raise ShareFormatError(str(exc)) from None


@dataclass(frozen=True)
class Dealing:
    structure: AccessStructure
    shares: dict
    characteristic_numbers: tuple
    public: PublicPolynomial
    bit_length: int


def characteristic_number(subset: Iterable[str], shares: Mapping[str, PrimeShare]) -> int:
    members = list(subset)
    if not members:
        raise EmptySubset("characteristic number of an empty subset")
    missing = [m for m in members if m not in shares]
    if missing:
        raise UnknownParticipant(f"no share for {sorted(missing)}")
    return prod(_prime_of(shares[m]) for m in members)


def _prime_of(share) -> int:
    return share.prime if isinstance(share, PrimeShare) else int(share)


def deal(
    structure: AccessStructure,
    secret,
    bit_length: int,
    seed,
    primes: Optional[Mapping[str, int]] = None,
) -> Dealing:
    """Generate shares and the public polynomial for ``structure``.

    Primes are drawn in canonical participant order unless ``primes`` pins
    them (used for worked examples; they must still be distinct primes).
    """
    structure.require_valid()
    structure = structure.canonical()
    secret = secret if isinstance(secret, Secret) else Secret(secret)

    if primes is None:
        drawn = generate_distinct_primes(structure.n, bit_length, seed)
        assigned = dict(zip(structure.participants, drawn))
    else:
        missing = set(structure.participants) - set(primes)
        if missing:
            raise UnknownParticipant(f"no prime supplied for {sorted(missing)}")
        assigned = {p: int(primes[p]) for p in structure.participants}
        if len(set(assigned.values())) != len(assigned):
            raise StructureInvalid(["supplied primes are not distinct"])
        bad = [p for p, v in assigned.items() if not is_probable_prime(v)]
        if bad:
            raise StructureInvalid([f"supplied value for {p} is not prime" for p in bad])
        bit_length = max(v.bit_length() for v in assigned.values())

    shares = {p: PrimeShare(p, v) for p, v in assigned.items()}
    chars = tuple(
        CharacteristicNumber(s, characteristic_number(s, shares)) for s in structure.authorized_sets
    )
    poly = poly_from_roots([c.value for c in chars], secret.value)
    return Dealing(structure, shares, chars, PublicPolynomial(poly, len(chars)), bit_length)


def coalition_product(coalition: Optional[Iterable[str]], own_shares: Iterable[PrimeShare]) -> int:
    """Multiply the coalition's primes into r.

    ``coalition=None`` takes the coalition to be whoever supplied a share.
    """
    own_shares = list(own_shares)
    by_member = {}
    for share in own_shares:
        if share.participant in by_member:
            raise DuplicateShare(f"participant {share.participant!r} contributed twice")
        by_member[share.participant] = share
    members = set(by_member) if coalition is None else set(coalition)
    if not members:
        raise EmptyCoalition("a coalition needs at least one member")
    missing = members - set(by_member)
    if missing:
        raise UnknownParticipant(f"no share supplied for {sorted(missing)}")
    strangers = set(by_member) - members
    if strangers:
        raise UnknownParticipant(f"shares from non-members {sorted(strangers)}")
    return prod(by_member[m].prime for m in members)


def reconstruct(public: PublicPolynomial, r: int) -> int:
    """Evaluate the public polynomial at r. The result is S or garbage."""
    return poly_eval(public.poly, r)
