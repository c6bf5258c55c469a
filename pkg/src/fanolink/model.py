"""Data model for two-sided divisorial link candidates.

A candidate consists of an anticanonical degree for the central variety,
one contraction datum per side, and the exact rational coefficients that
express each side's exceptional divisor after the flop in the opposite
side's basis.  Everything is immutable and hashable so candidate sets can
be compared directly; the check trace rides along without affecting
equality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction


class ContractionType(enum.Enum):
    """Divisorial contraction types that can bound the link."""

    E1 = "E1"        # blow-down to a smooth curve of genus g and degree d
    E2 = "E2"        # blow-down of a del Pezzo sextic surface to a point
    E34 = "E3/E4"    # quadric-surface contraction (the two quadric cases behave identically here)
    E5 = "E5"        # contraction of a plane with normal degree -2

    @property
    def label(self) -> str:
        return self.value

    @classmethod
    def from_label(cls, label: str) -> "ContractionType":
        for member in cls:
            if member.value == label:
                return member
        raise ValueError(f"unknown contraction type label: {label!r}")


STAR_TYPES = (ContractionType.E2, ContractionType.E34, ContractionType.E5)


class ExistenceStatus(enum.Enum):
    """Geometric realization status recorded for a golden row."""

    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"
    OPEN = "Open"

    @classmethod
    def from_label(cls, label: str) -> "ExistenceStatus":
        for member in cls:
            if member.value == label:
                return member
        raise ValueError(f"unknown existence status: {label!r}")


@dataclass(frozen=True)
class SideData:
    """One side's contraction datum.

    E1 sides carry the blown-down curve's ambient Fano index r (1..4), the
    curve degree d >= 1 and genus g >= 0.  The point-type sides E2, E3/E4
    and E5 carry no numeric data.
    """

    ctype: ContractionType
    r: int | None = None
    d: int | None = None
    g: int | None = None

    def __post_init__(self) -> None:
        if self.ctype is ContractionType.E1:
            if self.r is None or self.d is None or self.g is None:
                raise ValueError("E1 side requires (r, d, g)")
            if not 1 <= self.r <= 4:
                raise ValueError(f"E1 index out of range 1..4: {self.r}")
            if self.d < 1:
                raise ValueError(f"E1 curve degree must be >= 1: {self.d}")
            if self.g < 0:
                raise ValueError(f"E1 genus must be >= 0: {self.g}")
        else:
            if (self.r, self.d, self.g) != (None, None, None):
                raise ValueError(f"{self.ctype.label} side carries no numeric data")

    @property
    def is_e1(self) -> bool:
        return self.ctype is ContractionType.E1

    @property
    def target_index(self) -> int | None:
        """Fano index of this side's contraction target, if it is smooth.

        E1 lands on the index-r rank-one Fano, E2 on an index-1 one; the
        E3/E4 and E5 targets are singular and have no catalog index.
        """
        if self.ctype is ContractionType.E1:
            return self.r
        if self.ctype is ContractionType.E2:
            return 1
        return None


@dataclass(frozen=True)
class IntersectionConstants:
    """Intersection numbers of one exceptional divisor E on the central variety.

    kx2E  = (-K)^2 . E
    kxE2  = (-K) . E^2
    e3self = E^3
    """

    kx2E: int
    kxE2: int
    e3self: int


_STAR_CONSTANTS = {
    ContractionType.E2: IntersectionConstants(4, 2, 1),
    ContractionType.E34: IntersectionConstants(2, 2, 2),
    ContractionType.E5: IntersectionConstants(1, 2, 4),
}


def intersection_constants(side: SideData) -> IntersectionConstants:
    """Intersection constants of the side's exceptional divisor."""
    if side.ctype is ContractionType.E1:
        # For a curve of degree d and genus g inside the index-r target:
        # (-K)^2.E = rd + 2 - 2g, (-K).E^2 = 2 - 2g, E^3 = -rd + 2 - 2g.
        rd = side.r * side.d
        return IntersectionConstants(rd + 2 - 2 * side.g, 2 - 2 * side.g, -rd + 2 - 2 * side.g)
    return _STAR_CONSTANTS[side.ctype]


@dataclass(frozen=True)
class FlopCoefficients:
    """Basis coefficients of the flopped exceptional divisors.

    Writing H for the anticanonical class and E for a side's exceptional
    divisor, the strict transform of the opposite side's divisor is
    alpha_plus*H + beta_plus*E on the left and alpha*H + beta*E on the
    right.  For a consistent candidate the two pairs determine each other.
    """

    alpha: Fraction
    beta: Fraction
    alpha_plus: Fraction
    beta_plus: Fraction

    def closure_residuals(self) -> tuple[Fraction, Fraction, Fraction]:
        """Zero iff the two coefficient pairs are mutually consistent."""
        return (
            self.beta * self.beta_plus - 1,
            self.alpha + self.beta * self.alpha_plus,
            self.alpha_plus + self.beta_plus * self.alpha,
        )

    def all_nonzero(self) -> bool:
        return 0 not in (self.alpha, self.beta, self.alpha_plus, self.beta_plus)

    def mirrored(self) -> "FlopCoefficients":
        return FlopCoefficients(self.alpha_plus, self.beta_plus, self.alpha, self.beta)


def family_id(left: ContractionType, right: ContractionType) -> str:
    """Canonical family key, e.g. 'e1e1', 'e1e3' (E1 with E3/E4), 'e5e5'."""
    short = {
        ContractionType.E1: "e1",
        ContractionType.E2: "e2",
        ContractionType.E34: "e3",
        ContractionType.E5: "e5",
    }
    return short[left] + short[right]


@dataclass(frozen=True)
class LinkCandidate:
    """A fully derived candidate link, prior to or after admission.

    defect_e and defect_e_plus are the integer flop defects (left and right
    normalizations); they are None only when the derived value fails to be
    an integer, which can occur on rejected candidates kept for tracing.
    check_trace carries the most recent check reports and is excluded from
    equality and hashing.
    """

    kx3: int
    left: SideData
    right: SideData
    coeffs: FlopCoefficients
    sigma_left: int
    sigma_right: int
    kY3_left: Fraction
    kY3_right: Fraction
    etilde3_left: Fraction
    etilde3_right: Fraction
    defect_e: int | None
    defect_e_plus: int | None
    check_trace: tuple = field(default=(), compare=False, repr=False)

    @property
    def family(self) -> str:
        return family_id(self.left.ctype, self.right.ctype)

    @property
    def left_cube_scale(self) -> int:
        """r^3 for an E1 left side, 1 otherwise."""
        return self.left.r**3 if self.left.is_e1 else 1

    @property
    def e_over_r3(self) -> Fraction | None:
        """Left defect normalized by r^3; the side-independent defect invariant."""
        if self.defect_e is None:
            return None
        return Fraction(self.defect_e, self.left_cube_scale)

    def with_trace(self, trace: tuple) -> "LinkCandidate":
        return LinkCandidate(
            kx3=self.kx3,
            left=self.left,
            right=self.right,
            coeffs=self.coeffs,
            sigma_left=self.sigma_left,
            sigma_right=self.sigma_right,
            kY3_left=self.kY3_left,
            kY3_right=self.kY3_right,
            etilde3_left=self.etilde3_left,
            etilde3_right=self.etilde3_right,
            defect_e=self.defect_e,
            defect_e_plus=self.defect_e_plus,
            check_trace=trace,
        )
