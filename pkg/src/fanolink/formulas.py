"""Exact intersection-theoretic formulas for link candidates.

Conventions used throughout (and by the golden tables):

* kx3 denotes the positive anticanonical degree (-K)^3 of the central
  variety, so the literal intersection number K^3 equals -kx3.  Formulas
  that involve K^3 itself therefore carry an explicit minus sign.
* An E1 contraction datum (r, d, g) has excess sigma = r*d + 2 - 2g.
* For the point-type contractions the analogous excess is the constant
  (-K)^2.E of the exceptional divisor: 4 for E2, 2 for E3/E4, 1 for E5.

All functions are pure and exact; they accept ints or Fractions and return
ints or Fractions, never floats.
"""

from __future__ import annotations

from fractions import Fraction

from .model import (
    ContractionType,
    FlopCoefficients,
    IntersectionConstants,
    SideData,
    intersection_constants,
)


def sigma(r: int, d: int, g: int) -> int:
    """Anticanonical excess (-K)^2.E of an E1 side with data (r, d, g)."""
    return r * d + 2 - 2 * g


def star_sigma(ctype: ContractionType) -> int:
    """The constant (-K)^2.E of a point-type side (4, 2 or 1)."""
    if ctype is ContractionType.E1:
        raise ValueError("E1 sides derive sigma from (r, d, g)")
    return intersection_constants(SideData(ctype)).kx2E


def ky3_from_kx3(kx3: int, side: SideData) -> Fraction | int:
    """Anticanonical degree of the side's contraction target.

    Blowing down adds rd + sigma for an E1 side; the point-type sides add
    the fixed amounts 8, 2 and 1/2 (the E5 target is singular with a
    half-integral degree).
    """
    if side.ctype is ContractionType.E1:
        return kx3 + 2 * side.r * side.d + 2 - 2 * side.g
    if side.ctype is ContractionType.E2:
        return kx3 + 8
    if side.ctype is ContractionType.E34:
        return kx3 + 2
    return kx3 + Fraction(1, 2)


def beta_e1e1(r: int, r_plus: int) -> tuple[Fraction, Fraction]:
    """The E-coefficients (beta, beta_plus) for an E1-E1 pair of indices."""
    return Fraction(-r_plus, r), Fraction(-r, r_plus)


def alpha_plus_closed_form(
    sigma_left: int, sigma_right: int, beta_plus: Fraction, kx3: int
) -> Fraction:
    """Closed form for alpha_plus from the two excesses.

    Follows from intersecting the flopped divisor with (-K)^2 on both
    sides: alpha_plus * kx3 = sigma_left - beta_plus * sigma_right.
    """
    return (sigma_left - beta_plus * sigma_right) / Fraction(kx3)


def coeffs_e1e1(
    kx3: int, r: int, r_plus: int, sigma_left: int, sigma_right: int
) -> FlopCoefficients:
    """Full coefficient set for an E1-E1 candidate (closed-form route)."""
    beta, beta_plus = beta_e1e1(r, r_plus)
    alpha_plus = alpha_plus_closed_form(sigma_left, sigma_right, beta_plus, kx3)
    alpha = -beta * alpha_plus
    return FlopCoefficients(alpha, beta, alpha_plus, beta_plus)


def coeffs_from_star_pair(alpha_plus: int, beta_plus: int) -> FlopCoefficients:
    """Coefficients for an E1-star candidate from the integer star-side pair."""
    if beta_plus == 0:
        raise ValueError("beta_plus must be nonzero")
    return FlopCoefficients(
        Fraction(-alpha_plus, beta_plus),
        Fraction(1, beta_plus),
        Fraction(alpha_plus),
        Fraction(beta_plus),
    )


def coeffs_symmetric(alpha: int) -> FlopCoefficients:
    """Coefficients for a symmetric star-star candidate: alpha = alpha_plus, beta = -1."""
    return FlopCoefficients(Fraction(alpha), Fraction(-1), Fraction(alpha), Fraction(-1))


def e1e1_residuals(
    kx3: int,
    coeffs: FlopCoefficients,
    g_left: int,
    sigma_left: int,
    g_right: int,
    sigma_right: int,
) -> tuple[Fraction, Fraction]:
    """Genus-consistency residual pair for an E1-E1 candidate.

    Each residual equates the arithmetic genus of the opposite curve,
    computed through the flopped divisor, with its stated genus; both must
    vanish on an admissible candidate.
    """
    a, b = coeffs.alpha, coeffs.beta
    ap, bp = coeffs.alpha_plus, coeffs.beta_plus
    res1 = a * a * kx3 + 2 * a * b * sigma_left + b * b * (2 * g_left - 2) - (2 * g_right - 2)
    res2 = ap * ap * kx3 + 2 * ap * bp * sigma_right + bp * bp * (2 * g_right - 2) - (2 * g_left - 2)
    return res1, res2


def e1estar_residuals(
    kx3: int,
    coeffs: FlopCoefficients,
    r: int,
    d: int,
    g: int,
    star_c: int,
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Residual system for an E1 side paired with a point-type side.

    res1, res3 are the two cubic/genus consistency relations (they involve
    the literal K^3 = -kx3); res2, res4 are the linear excess relations.
    star_c is the point-side constant 4, 2 or 1.  All four must vanish.
    """
    a, b = coeffs.alpha, coeffs.beta
    ap, bp = coeffs.alpha_plus, coeffs.beta_plus
    sig = sigma(r, d, g)
    two_minus_2g = 2 - 2 * g
    res1 = a * a * (-kx3) - 2 * a * b * (r * d) + two_minus_2g * (-2 * a * b + b * b) - 2
    res2 = a * kx3 + b * sig - star_c
    res3 = ap * ap * (-kx3) - 2 * ap * bp * star_c + 2 * bp * bp - two_minus_2g
    res4 = ap * kx3 + bp * star_c - sig
    return res1, res2, res3, res4


def etilde_cubed(
    alpha_plus: Fraction,
    beta_plus: Fraction,
    kx3: int,
    opposite: IntersectionConstants,
) -> Fraction:
    """Cube of a flopped exceptional divisor, expanded in the opposite basis.

    With the strict transform written alpha_plus*H + beta_plus*E and H the
    anticanonical class, expanding the cube against the opposite side's
    intersection constants gives
        a^3 kx3 + 3 a^2 b (H^2.E) - 3 a b^2 (H.E^2) + b^3 E^3,
    the middle signs reflecting that H = -K.
    """
    a, b = alpha_plus, beta_plus
    return (
        a * a * a * kx3
        + 3 * a * a * b * opposite.kx2E
        - 3 * a * b * b * opposite.kxE2
        + b * b * b * opposite.e3self
    )


def defect(e3self: int, etilde3: Fraction | int) -> Fraction | int:
    """Flop defect: drop of the divisor's self-cube across the flop."""
    return e3self - etilde3


def symmetric_kx3(ctype: ContractionType, alpha: int) -> Fraction:
    """Central degree of a symmetric star-star candidate with coefficient alpha.

    The symmetric relation alpha * kx3 = 2c forces kx3 = 2c/alpha, where c
    is the point-side constant.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive: {alpha}")
    return Fraction(2 * star_sigma(ctype), alpha)
