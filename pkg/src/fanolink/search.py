"""Candidate enumeration: primary closed-form search and brute-force oracle.

Two independent routes produce every family's candidate set:

* The primary enumerators loop over the documented search space, derive
  the flop coefficients in closed form (or scan the integer coefficient
  box for the point-type families), prune with exact integer forms of the
  residual system, and admit through the full check suite.
* ``brute_force_oracle`` re-derives each family with a deliberately
  different generator: for E1-E1 it scans the leading coefficient as an
  explicit rational p/q and solves the genus relation directly instead of
  using the closed form; for the E1-point families it pins the leading
  coefficient through the quadratic consistency relation instead of the
  linear one; for the symmetric families it scans the full degree/alpha
  grid instead of walking divisors.

The acceptance tests require the two routes to agree exactly, which is
the engine's main self-check.

Ordering is canonical and total per family, so outputs are reproducible
byte for byte at any thread count.  Sharded parallel enumeration is
available for the E1-E1 family via SARKISOV_THREADS (default 1).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .catalog import is_valid_fano_degree
from .checks import DEFAULT_CHECKS, E1_SIGMA_MIN, admitted, run_checks
from .formulas import (
    coeffs_e1e1,
    coeffs_from_star_pair,
    coeffs_symmetric,
    etilde_cubed,
    ky3_from_kx3,
    sigma,
    star_sigma,
)
from .model import (
    ContractionType,
    FlopCoefficients,
    LinkCandidate,
    SideData,
    intersection_constants,
)
from .rational import as_integer, is_integer

KX3_VALUES: tuple[int, ...] = tuple(range(2, 23, 2))
D_MAX = 19
# Maximal genus per index; beyond these the excess is never positive.
G_MAX: dict[int, int] = {1: 10, 2: 20, 3: 29, 4: 39}
MAX_ALPHA_PLUS = 86
# Oracle scan bound for leading-coefficient numerators (denominators 1..4).
ORACLE_NUMERATOR_BOUND = 360

FAMILY_IDS: tuple[str, ...] = ("e1e1", "e1e2", "e1e3", "e1e5", "e2e2", "e3e3", "e5e5")

_STAR_OF_FAMILY = {
    "e1e2": ContractionType.E2,
    "e1e3": ContractionType.E34,
    "e1e5": ContractionType.E5,
    "e2e2": ContractionType.E2,
    "e3e3": ContractionType.E34,
    "e5e5": ContractionType.E5,
}

TraceFn = Callable[[str, tuple, tuple[str, ...]], None]


# ---------------------------------------------------------------------------
# Candidate construction


def _finish(
    kx3: int,
    left: SideData,
    right: SideData,
    coeffs: FlopCoefficients,
    sigma_left: int,
    sigma_right: int,
) -> LinkCandidate:
    etilde3_left = etilde_cubed(
        coeffs.alpha_plus, coeffs.beta_plus, kx3, intersection_constants(right)
    )
    etilde3_right = etilde_cubed(coeffs.alpha, coeffs.beta, kx3, intersection_constants(left))
    defect_left = intersection_constants(left).e3self - etilde3_left
    defect_right = intersection_constants(right).e3self - etilde3_right
    return LinkCandidate(
        kx3=kx3,
        left=left,
        right=right,
        coeffs=coeffs,
        sigma_left=sigma_left,
        sigma_right=sigma_right,
        kY3_left=ky3_from_kx3(kx3, left),
        kY3_right=ky3_from_kx3(kx3, right),
        etilde3_left=etilde3_left,
        etilde3_right=etilde3_right,
        defect_e=as_integer(defect_left) if is_integer(defect_left) else None,
        defect_e_plus=as_integer(defect_right) if is_integer(defect_right) else None,
    )


def build_e1e1(
    kx3: int, left_data: tuple[int, int, int], right_data: tuple[int, int, int]
) -> LinkCandidate:
    """Fully derived E1-E1 candidate from the two curve data triples."""
    r, d, g = left_data
    rp, dp, gp = right_data
    left = SideData(ContractionType.E1, r, d, g)
    right = SideData(ContractionType.E1, rp, dp, gp)
    sig, sig_p = sigma(r, d, g), sigma(rp, dp, gp)
    coeffs = coeffs_e1e1(kx3, r, rp, sig, sig_p)
    return _finish(kx3, left, right, coeffs, sig, sig_p)


def build_e1estar(
    kx3: int,
    left_data: tuple[int, int, int],
    star: ContractionType,
    alpha_plus: int,
    beta_plus: int,
) -> LinkCandidate:
    """Fully derived candidate for an E1 side against a point-type side."""
    r, d, g = left_data
    left = SideData(ContractionType.E1, r, d, g)
    right = SideData(star)
    coeffs = coeffs_from_star_pair(alpha_plus, beta_plus)
    return _finish(kx3, left, right, coeffs, sigma(r, d, g), star_sigma(star))


def build_symmetric(star: ContractionType, alpha: int, kx3: int) -> LinkCandidate:
    """Fully derived symmetric point-type candidate."""
    side = SideData(star)
    c = star_sigma(star)
    return _finish(kx3, side, side, coeffs_symmetric(alpha), c, c)


# ---------------------------------------------------------------------------
# Canonical ordering and orientation


def canonical_sort_key(candidate: LinkCandidate) -> tuple:
    """Total order within a family, matching the golden tables' layout."""
    left, right = candidate.left, candidate.right
    if left.is_e1 and right.is_e1:
        return (candidate.kx3, left.r, right.r, left.g, left.d, right.g, right.d)
    if left.is_e1:
        return (candidate.kx3, left.r, left.g, left.d)
    return (as_integer(candidate.coeffs.alpha),)


def orientation_canonical(left_data: tuple[int, int, int], right_data: tuple[int, int, int]) -> bool:
    """Deduplication rule for E1-E1: keep the mirror with the larger side first.

    Larger means greater index, or with equal indices a lexicographically
    greater-or-equal (degree, genus) pair, so a pair and its mirror are
    enumerated exactly once and self-mirrors survive.
    """
    r, d, g = left_data
    rp, dp, gp = right_data
    if r != rp:
        return r > rp
    return (d, g) >= (dp, gp)


def mirror_candidate(candidate: LinkCandidate) -> LinkCandidate:
    """The same link read from the opposite end."""
    mirrored = LinkCandidate(
        kx3=candidate.kx3,
        left=candidate.right,
        right=candidate.left,
        coeffs=candidate.coeffs.mirrored(),
        sigma_left=candidate.sigma_right,
        sigma_right=candidate.sigma_left,
        kY3_left=candidate.kY3_right,
        kY3_right=candidate.kY3_left,
        etilde3_left=candidate.etilde3_right,
        etilde3_right=candidate.etilde3_left,
        defect_e=candidate.defect_e_plus,
        defect_e_plus=candidate.defect_e,
    )
    return mirrored


# ---------------------------------------------------------------------------
# E1-E1 enumeration


def _e1_side_list(
    kx3: int,
    r: int,
    enabled: frozenset[str],
    degree_check: str,
    trace: TraceFn | None = None,
    stage: str = "side",
) -> list[tuple]:
    """All (d, g, sigma, kY3) for one index, pruned by the side-local checks.

    Pruning here is an optimization only: a side is dropped exactly when
    the named enabled check would reject every pair containing it.  With
    tracing on, each pruned side is reported once (not once per pair).
    """
    sides = []
    for d in range(1, D_MAX + 1):
        for g in range(0, G_MAX[r] + 1):
            sig = sigma(r, d, g)
            if "SIGMA_POS" in enabled and sig < E1_SIGMA_MIN:
                if trace is not None:
                    trace(stage, (kx3, r, d, g), ("SIGMA_POS",))
                continue
            ky3 = kx3 + 2 * r * d + 2 - 2 * g
            if degree_check in enabled and not is_valid_fano_degree(r, ky3):
                if trace is not None:
                    trace(stage, (kx3, r, d, g), (degree_check,))
                continue
            sides.append((d, g, sig, ky3))
    return sides


def _e1e1_pairs_for_shard(
    kx3: int,
    r: int,
    rp: int,
    enabled: frozenset[str],
    trace: TraceFn | None = None,
    left_sides: list[tuple] | None = None,
    right_sides: list[tuple] | None = None,
) -> list[LinkCandidate]:
    """Evaluate all oriented pairs with indices (r, rp) at one central degree."""
    fast = "DIOPHANTINE" in enabled
    results: list[LinkCandidate] = []
    if left_sides is None:
        left_sides = _e1_side_list(kx3, r, enabled, "FANO_DEGREE_LEFT")
    if right_sides is None:
        right_sides = _e1_side_list(kx3, rp, enabled, "FANO_DEGREE_RIGHT")
    for d, g, sig, _ky3 in left_sides:
        two_g_minus_2 = 2 * g - 2
        for dp, gp, sig_p, _ky3p in right_sides:
            if r == rp and (d, g) < (dp, gp):
                continue
            if fast:
                # Exact integer multiple of the first genus residual; the
                # second residual is its negative once the leading
                # coefficient comes from the closed form (their sum
                # telescopes), so one test decides the pair.
                n = sig * rp + r * sig_p
                r1 = (
                    n * n
                    - 2 * n * sig * rp
                    + rp * rp * kx3 * two_g_minus_2
                    - r * r * kx3 * (2 * gp - 2)
                )
                if r1 != 0:
                    if trace is not None:
                        trace("pair-fast", (kx3, r, d, g, rp, dp, gp), ("DIOPHANTINE",))
                    continue
            candidate = build_e1e1(kx3, (r, d, g), (rp, dp, gp))
            reports = run_checks(candidate, enabled, short_circuit=trace is None)
            if admitted(reports):
                results.append(candidate.with_trace(reports))
            elif trace is not None:
                failed = tuple(rep.name for rep in reports if not rep.passed)
                trace("full", (kx3, r, d, g, rp, dp, gp), failed)
    return results


def _shard_worker(args: tuple[int, int, int, frozenset[str]]) -> list[LinkCandidate]:
    kx3, r, rp, enabled = args
    return _e1e1_pairs_for_shard(kx3, r, rp, enabled)


def _thread_count(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    return max(1, int(os.environ.get("SARKISOV_THREADS", "1")))


def enumerate_e1e1(
    enabled: frozenset[str] = DEFAULT_CHECKS,
    threads: int | None = None,
    trace: TraceFn | None = None,
) -> tuple[LinkCandidate, ...]:
    """All admissible E1-E1 candidates in canonical order.

    The loop runs over (kx3, r, d, g, rp, dp, gp) restricted to the
    canonical orientation; coefficients come from the closed form.  With
    more than one thread the (kx3, r, rp) shards run in worker processes;
    results are merged and re-sorted, so output is independent of the
    thread count.  Tracing forces the serial path.
    """
    shards = [
        (kx3, r, rp, enabled) for kx3 in KX3_VALUES for r in range(1, 5) for rp in range(1, r + 1)
    ]
    n_threads = 1 if trace is not None else _thread_count(threads)
    if n_threads > 1:
        with ProcessPoolExecutor(max_workers=n_threads) as pool:
            shard_results = list(pool.map(_shard_worker, shards))
    else:
        left_map = {
            (kx3, r): _e1_side_list(kx3, r, enabled, "FANO_DEGREE_LEFT", trace, "side-left")
            for kx3 in KX3_VALUES
            for r in range(1, 5)
        }
        right_map = {
            (kx3, r): _e1_side_list(kx3, r, enabled, "FANO_DEGREE_RIGHT", trace, "side-right")
            for kx3 in KX3_VALUES
            for r in range(1, 5)
        }
        shard_results = [
            _e1e1_pairs_for_shard(
                kx3, r, rp, enabled, trace, left_map[(kx3, r)], right_map[(kx3, rp)]
            )
            for kx3, r, rp, enabled in shards
        ]
    merged = [candidate for block in shard_results for candidate in block]
    merged.sort(key=canonical_sort_key)
    return tuple(merged)


# ---------------------------------------------------------------------------
# E1-point enumeration


def enumerate_e1estar(
    star: ContractionType,
    enabled: frozenset[str] = DEFAULT_CHECKS,
    trace: TraceFn | None = None,
) -> tuple[LinkCandidate, ...]:
    """All admissible candidates pairing an E1 side with one point type.

    The search box is (kx3, r, d, g) x (alpha_plus in 1..86) x
    (beta_plus in -r..-1) with integer point-side coefficients.  When the
    residual check is enabled, the linear excess relation pins alpha_plus
    for each (box, beta_plus), so the alpha_plus loop collapses to a
    membership test; with the check disabled the box is scanned literally.
    """
    if star is ContractionType.E1:
        raise ValueError("point-type side required")
    fast = "DIOPHANTINE" in enabled
    c = star_sigma(star)
    results: list[LinkCandidate] = []
    for kx3 in KX3_VALUES:
        for r in range(1, 5):
            for d, g, sig, _ky3 in _e1_side_list(
                kx3, r, enabled, "FANO_DEGREE_LEFT", trace, "side-left"
            ):
                for bp in range(-r, 0):
                    if fast:
                        # res4 = ap*kx3 + bp*c - sig vanishes for exactly one
                        # rational ap; keep it when it is an integer in range.
                        num = sig - bp * c
                        ap, rem = divmod(num, kx3)
                        if rem != 0 or not 1 <= ap <= MAX_ALPHA_PLUS:
                            if trace is not None:
                                trace("pair-fast", (kx3, r, d, g, bp), ("DIOPHANTINE",))
                            continue
                        candidates_ap = (ap,)
                    else:
                        candidates_ap = range(1, MAX_ALPHA_PLUS + 1)
                    for ap in candidates_ap:
                        candidate = build_e1estar(kx3, (r, d, g), star, ap, bp)
                        reports = run_checks(candidate, enabled, short_circuit=trace is None)
                        if admitted(reports):
                            results.append(candidate.with_trace(reports))
                        elif trace is not None:
                            failed = tuple(rep.name for rep in reports if not rep.passed)
                            trace("full", (kx3, r, d, g, ap, bp), failed)
    results.sort(key=canonical_sort_key)
    return tuple(results)


# ---------------------------------------------------------------------------
# Symmetric point-type enumeration


def enumerate_symmetric(
    star: ContractionType,
    enabled: frozenset[str] = DEFAULT_CHECKS,
    trace: TraceFn | None = None,
) -> tuple[LinkCandidate, ...]:
    """All admissible symmetric candidates for one point type.

    alpha runs over the positive divisors of twice the point-side constant;
    the central degree 2c/alpha must land even and within range, and the
    full check suite decides admission.
    """
    if star is ContractionType.E1:
        raise ValueError("point-type side required")
    two_c = 2 * star_sigma(star)
    results: list[LinkCandidate] = []
    for alpha in range(1, two_c + 1):
        if two_c % alpha != 0:
            continue
        kx3 = two_c // alpha
        if kx3 % 2 != 0 or not 2 <= kx3 <= 22:
            if trace is not None:
                trace("domain", (kx3, alpha), ("KX3_RANGE",))
            continue
        candidate = build_symmetric(star, alpha, kx3)
        reports = run_checks(candidate, enabled, short_circuit=trace is None)
        if admitted(reports):
            results.append(candidate.with_trace(reports))
        elif trace is not None:
            failed = tuple(rep.name for rep in reports if not rep.passed)
            trace("full", (kx3, alpha), failed)
    results.sort(key=canonical_sort_key)
    return tuple(results)


# ---------------------------------------------------------------------------
# Family dispatch


def enumerate_family(
    family: str,
    enabled: frozenset[str] = DEFAULT_CHECKS,
    threads: int | None = None,
    trace: TraceFn | None = None,
) -> tuple[LinkCandidate, ...]:
    if family == "e1e1":
        return enumerate_e1e1(enabled, threads=threads, trace=trace)
    if family in ("e1e2", "e1e3", "e1e5"):
        return enumerate_e1estar(_STAR_OF_FAMILY[family], enabled, trace=trace)
    if family in ("e2e2", "e3e3", "e5e5"):
        return enumerate_symmetric(_STAR_OF_FAMILY[family], enabled, trace=trace)
    raise ValueError(f"unknown family: {family!r}")


# ---------------------------------------------------------------------------
# Brute-force oracle


def _oracle_e1e1() -> tuple[LinkCandidate, ...]:
    """Independent E1-E1 route: explicit rational scan of the coefficient.

    For each left side and right index, alpha_plus runs over reduced
    fractions p/q (q <= 4, p bounded); the right genus is solved from the
    genus relation and the right degree from the excess relation, instead
    of deriving the coefficient from the two excesses in closed form.
    """
    results: list[LinkCandidate] = []
    seen: set[tuple] = set()
    for kx3 in KX3_VALUES:
        for r in range(1, 5):
            for d in range(1, D_MAX + 1):
                for g in range(0, G_MAX[r] + 1):
                    sig = sigma(r, d, g)
                    if sig <= 0:
                        continue  # the default suite enforces positive excess
                    for rp in range(1, 5):
                        sig_p_cap = 19 * rp + 2
                        for q in range(1, 5):
                            # p window: positive right excess up to its cap.
                            p_lo = (q * sig) // kx3 + 1
                            p_hi = (q * (sig * rp + r * sig_p_cap)) // (rp * kx3)
                            p_hi = min(p_hi, ORACLE_NUMERATOR_BOUND)
                            for p in range(max(1, p_lo), p_hi + 1):
                                if math.gcd(p, q) != 1:
                                    continue
                                # Genus relation solved directly for the right genus.
                                t = p * p * kx3 - 2 * p * q * sig + q * q * (2 * g - 2)
                                num = rp * rp * t
                                den = r * r * q * q
                                if num % den != 0:
                                    continue
                                two_gp_minus_2 = num // den
                                if two_gp_minus_2 % 2 != 0:
                                    continue
                                gp = (two_gp_minus_2 + 2) // 2
                                if not 0 <= gp <= G_MAX[rp]:
                                    continue
                                # Excess relation gives the right-side excess.
                                num_sig = rp * (p * kx3 - q * sig)
                                den_sig = r * q
                                if num_sig % den_sig != 0:
                                    continue
                                sig_p = num_sig // den_sig
                                if not 0 < sig_p <= sig_p_cap:
                                    continue
                                dp_num = sig_p - 2 + 2 * gp
                                if dp_num % rp != 0:
                                    continue
                                dp = dp_num // rp
                                if not 1 <= dp <= D_MAX:
                                    continue
                                if not orientation_canonical((r, d, g), (rp, dp, gp)):
                                    continue
                                key = (kx3, r, d, g, rp, dp, gp)
                                if key in seen:
                                    continue
                                candidate = build_e1e1(kx3, (r, d, g), (rp, dp, gp))
                                if candidate.coeffs.alpha_plus != Fraction(p, q):
                                    continue
                                if admitted(run_checks(candidate, short_circuit=True)):
                                    seen.add(key)
                                    results.append(candidate)
    results.sort(key=canonical_sort_key)
    return tuple(results)


def _oracle_e1estar(star: ContractionType) -> tuple[LinkCandidate, ...]:
    """Independent E1-point route: quadratic relation as the generator.

    alpha_plus is scanned over the full integer box and kept when the
    quadratic consistency relation vanishes (the primary route instead
    pins it through the linear excess relation); survivors still face the
    full check suite.
    """
    c = star_sigma(star)
    results: list[LinkCandidate] = []
    for kx3 in KX3_VALUES:
        for r in range(1, 5):
            for d in range(1, D_MAX + 1):
                for g in range(0, G_MAX[r] + 1):
                    sig = sigma(r, d, g)
                    if sig <= 0:
                        continue
                    two_minus_2g = 2 - 2 * g
                    for bp in range(-r, 0):
                        # res3 = 0 rearranged: ap*(ap*kx3 + 2*bp*c) = 2*bp^2 - (2-2g).
                        rhs = 2 * bp * bp - two_minus_2g
                        for ap in range(1, MAX_ALPHA_PLUS + 1):
                            if ap * (ap * kx3 + 2 * bp * c) != rhs:
                                continue
                            candidate = build_e1estar(kx3, (r, d, g), star, ap, bp)
                            if admitted(run_checks(candidate, short_circuit=True)):
                                results.append(candidate)
    results.sort(key=canonical_sort_key)
    return tuple(results)


def _oracle_symmetric(star: ContractionType) -> tuple[LinkCandidate, ...]:
    """Independent symmetric route: full grid scan of (degree, alpha)."""
    two_c = 2 * star_sigma(star)
    results: list[LinkCandidate] = []
    for kx3 in KX3_VALUES:
        for alpha in range(1, MAX_ALPHA_PLUS + 1):
            if alpha * kx3 != two_c:
                continue
            candidate = build_symmetric(star, alpha, kx3)
            if admitted(run_checks(candidate, short_circuit=True)):
                results.append(candidate)
    results.sort(key=canonical_sort_key)
    return tuple(results)


def brute_force_oracle(family: str) -> tuple[LinkCandidate, ...]:
    """Re-derive a family's candidate set along the independent route.

    Always runs the default check suite; the result must coincide with the
    primary enumerator's output exactly.
    """
    if family == "e1e1":
        return _oracle_e1e1()
    if family in ("e1e2", "e1e3", "e1e5"):
        return _oracle_e1estar(_STAR_OF_FAMILY[family])
    if family in ("e2e2", "e3e3", "e5e5"):
        return _oracle_symmetric(_STAR_OF_FAMILY[family])
    raise ValueError(f"unknown family: {family!r}")
