"""Participants, access structures and the monotone-closure transform.

Subsets are bitmasks over the canonical (sorted) participant order: bit ``i``
stands for ``participants[i]``. "Canonical subset order" everywhere in the
package means ascending bitmask value.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

__all__ = [
    "AccessStructure",
    "ValidationReport",
    "ClosureGrowth",
    "StructureInvalid",
    "StructureFormatError",
    "ClosureTooLarge",
    "DEFAULT_CLOSURE_CAP",
    "monotone_closure",
    "closure_growth_report",
    "is_superset_closed",
]

DEFAULT_CLOSURE_CAP = 1 << 20


class StructureInvalid(ValueError):
    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(self.issues) or "invalid access structure")


class StructureFormatError(ValueError):
    """Access-structure JSON that does not have the expected shape."""


class ClosureTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class AccessStructure:
    """A universe of participant ids plus the authorized family gamma.

    Construction does not validate, so that :meth:`validate` can report on
    malformed input. Use :meth:`canonical` (or any consumer) on valid data.
    """

    participants: tuple
    authorized_sets: tuple = field(default=())

    @classmethod
    def from_sets(cls, participants: Iterable[str], authorized_sets: Iterable[Iterable[str]]):
        return cls(
            participants=tuple(sorted(participants)),
            authorized_sets=tuple(frozenset(s) for s in authorized_sets),
        )

    @property
    def n(self) -> int:
        return len(self.participants)

    @property
    def k(self) -> int:
        return len(set(self.authorized_sets))

    @property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.participants)}

    def mask_of(self, subset: Iterable[str]) -> int:
        index = self.index
        mask = 0
        for name in subset:
            mask |= 1 << index[name]
        return mask

    def names_of(self, mask: int) -> frozenset:
        return frozenset(p for i, p in enumerate(self.participants) if mask >> i & 1)

    @property
    def masks(self) -> list:
        """Authorized sets as bitmasks, deduplicated, in canonical order."""
        return sorted({self.mask_of(s) for s in self.authorized_sets})

    def sets_in_order(self) -> list:
        return [self.names_of(m) for m in self.masks]

    def is_authorized(self, subset: Iterable[str]) -> bool:
        return self.mask_of(subset) in set(self.masks)

    def validate(self) -> ValidationReport:
        issues = []
        if any(not isinstance(p, str) or not p for p in self.participants):
            issues.append("participant ids must be nonempty strings")
        if len(set(self.participants)) != len(self.participants):
            issues.append("duplicate participant ids")
        if not self.authorized_sets:
            issues.append(
                "empty access structure: a degree-0 public polynomial would publish the secret"
            )
        known = set(self.participants)
        seen = set()
        for s in self.authorized_sets:
            label = sorted(s)
            if not s:
                issues.append("empty authorized set")
                continue
            unknown = s - known
            if unknown:
                issues.append(f"unknown participant(s) {sorted(unknown)} in {label}")
                continue
            if s in seen:
                issues.append(f"duplicate authorized set {label}")
            seen.add(s)
        return ValidationReport(tuple(issues))

    def require_valid(self) -> "AccessStructure":
        report = self.validate()
        if not report:
            raise StructureInvalid(report.issues)
        return self

    def canonical(self) -> "AccessStructure":
        """Same family, deduplicated and in canonical subset order."""
        return AccessStructure(self.participants, tuple(self.sets_in_order()))

    @classmethod
    def from_masks(cls, participants, masks) -> "AccessStructure":
        base = cls(tuple(participants))
        return cls(base.participants, tuple(base.names_of(m) for m in sorted(set(masks))))

    def to_json(self) -> dict:
        return {
            "participants": list(self.participants),
            "authorized_sets": [sorted(s) for s in self.sets_in_order()],
        }

    @classmethod
    def from_json(cls, data) -> "AccessStructure":
        if not isinstance(data, dict):
            raise StructureFormatError("access structure must be a JSON object")
        participants = data.get("participants")
        sets = data.get("authorized_sets")
        if not isinstance(participants, list) or not isinstance(sets, list):
            raise StructureFormatError("expected 'participants' and 'authorized_sets' lists")
        if not all(isinstance(s, list) for s in sets):
            raise StructureFormatError("each authorized set must be a list of participant ids")
        if not all(isinstance(p, str) for s in [participants, *sets] for p in s):
            raise StructureFormatError("participant ids must be strings")
        # no sorting here: duplicate ids must survive to validate()
        return cls(tuple(sorted(participants)), tuple(frozenset(s) for s in sets))


def monotone_closure(structure: AccessStructure, cap: int = DEFAULT_CLOSURE_CAP) -> AccessStructure:
    """Add every superset (within the universe) of every authorized set.

    Walks upward one participant at a time; raises :class:`ClosureTooLarge`
    as soon as the family would exceed ``cap`` members.
    """
    structure.require_valid()
    n = structure.n
    closed = set(structure.masks)
    if len(closed) > cap:
        raise ClosureTooLarge(f"closure exceeds cap of {cap} sets")
    frontier = list(closed)
    while frontier:
        nxt = []
        for mask in frontier:
            for i in range(n):
                bigger = mask | (1 << i)
                if bigger != mask and bigger not in closed:
                    closed.add(bigger)
                    if len(closed) > cap:
                        raise ClosureTooLarge(f"closure exceeds cap of {cap} sets")
                    nxt.append(bigger)
        frontier = nxt
    return AccessStructure.from_masks(structure.participants, closed)


def is_superset_closed(structure: AccessStructure) -> bool:
    masks = set(structure.masks)
    return all(m | (1 << i) in masks for m in masks for i in range(structure.n))


@dataclass(frozen=True)
class ClosureGrowth:
    k_before: int
    k_after: int
    n: int

    @property
    def growth_estimate(self) -> Fraction:
        """The k * 2^(n-k) growth estimate, for comparison with the exact count."""
        return self.k_before * Fraction(2) ** (self.n - self.k_before)

    def to_json(self) -> dict:
        return {
            "k_before": self.k_before,
            "k_after": self.k_after,
            "n": self.n,
            "growth_factor": str(Fraction(self.k_after, self.k_before)),
            "estimate_k_2_pow_n_minus_k": str(self.growth_estimate),
        }


def closure_growth_report(structure: AccessStructure, cap: int = DEFAULT_CLOSURE_CAP) -> ClosureGrowth:
    closed = monotone_closure(structure, cap)
    return ClosureGrowth(k_before=structure.k, k_after=closed.k, n=structure.n)
