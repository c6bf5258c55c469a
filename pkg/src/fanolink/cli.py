"""Command-line interface.

Three subcommands cover the engine's workflow:

* ``enumerate`` runs the closed-form search and prints the candidate sets
  (csv, json, markdown or latex), optionally with individual checks
  disabled and rejected tuples traced to stderr.
* ``verify`` re-enumerates the requested families and diffs them against
  the packaged golden tables, exiting 1 on any discrepancy.
* ``explain`` derives every intermediate quantity for one candidate,
  named either by its golden row number or by a raw data tuple, and
  prints the full check report whether or not the candidate is admitted.

Exit codes: 0 success (and exact match for verify), 1 verification
mismatch, 2 usage error, 3 internal error (bad packaged data, I/O
failure, arithmetic guard).

The tool reads no network and writes nothing except an explicit --out
file.  SARKISOV_THREADS (default 1) selects the worker count for the
E1-E1 enumeration; output is identical at any setting.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import checks as checks_mod
from . import golden as golden_mod
from . import render as render_mod
from . import search as search_mod
from .model import ContractionType
from .rational import as_integer, render_exact

FORMAT_CHOICES = ("csv", "json", "markdown", "latex")


def _parse_families(value: str) -> list[str]:
    requested = [part.strip() for part in value.split(",") if part.strip()]
    if not requested:
        raise ValueError("no families given")
    if "all" in requested:
        return list(search_mod.FAMILY_IDS)
    unknown = sorted(set(requested) - set(search_mod.FAMILY_IDS))
    if unknown:
        raise ValueError(
            f"unknown families: {', '.join(unknown)} "
            f"(choose from {', '.join(search_mod.FAMILY_IDS)} or all)"
        )
    # Canonical order, duplicates collapsed.
    return [family for family in search_mod.FAMILY_IDS if family in requested]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanolink",
        description="Exact enumeration of two-sided divisorial link candidates.",
    )
    parser.add_argument(
        "--list-checks", action="store_true", help="list the admission checks and exit"
    )
    sub = parser.add_subparsers(dest="command")

    enum_p = sub.add_parser("enumerate", help="run the search and print candidate sets")
    enum_p.add_argument("--families", default="all", help="comma-separated family ids or 'all'")
    enum_p.add_argument("--format", default="csv", choices=FORMAT_CHOICES)
    enum_p.add_argument("--out", default=None, help="write output to this file instead of stdout")
    enum_p.add_argument(
        "--disable-check",
        action="append",
        default=[],
        metavar="CHECK",
        help="disable one admission check (repeatable)",
    )
    enum_p.add_argument(
        "--trace-rejections",
        action="store_true",
        help="stream rejected tuples with their failing checks to stderr",
    )
    enum_p.add_argument("--list-checks", action="store_true", help=argparse.SUPPRESS)

    verify_p = sub.add_parser("verify", help="diff enumerated candidates against golden tables")
    verify_p.add_argument("--families", default="all", help="comma-separated family ids or 'all'")

    explain_p = sub.add_parser("explain", help="derive and check a single candidate")
    explain_p.add_argument("family", help="family id, e.g. e1e1")
    explain_p.add_argument(
        "key",
        nargs="+",
        help="'row N' (golden row number) or a data tuple: "
        "e1e1 (kx3,r,d,g,r+,d+,g+); E1-point (kx3,r,d,g,alpha+,beta+); symmetric (kx3,alpha)",
    )
    return parser


def _print_check_listing(stream) -> None:
    width = max(len(name) for name in checks_mod.REGISTRY)
    for name, (description, _) in checks_mod.REGISTRY.items():
        print(f"{name:<{width}}  {description}", file=stream)


def _cmd_enumerate(args: argparse.Namespace) -> int:
    try:
        families = _parse_families(args.families)
        checks_mod.validate_check_ids(args.disable_check)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    enabled = frozenset(checks_mod.DEFAULT_CHECKS - set(args.disable_check))

    trace = None
    if args.trace_rejections:

        def trace(stage: str, data: tuple, failed: tuple[str, ...]) -> None:
            print(f"reject[{stage}] {data} failed={','.join(failed)}", file=sys.stderr)

    sections = []
    golden_rows = []
    for family in families:
        sections.append((family, search_mod.enumerate_family(family, enabled, trace=trace)))
        golden_rows.extend(golden_mod.golden_for_family(family))
    golden_index = render_mod.build_golden_index(golden_rows)
    text = render_mod.render_dispatch(args.format, sections, golden_index)

    if args.out is None:
        sys.stdout.write(text)
        return 0
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(text)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        families = _parse_families(args.families)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    any_mismatch = False
    for family in families:
        candidates = search_mod.enumerate_family(family)
        golden = golden_mod.golden_for_family(family)
        report = golden_mod.diff(candidates, golden)
        if report.empty:
            print(f"{family}: exact match ({len(candidates)} rows)")
        else:
            any_mismatch = True
            print(f"{family}: MISMATCH")
            print(report.describe())
    return 1 if any_mismatch else 0


def _candidate_from_golden_row(row) -> "search_mod.LinkCandidate":
    if row.family == "e1e1":
        return search_mod.build_e1e1(
            row.kx3, (row.r, row.d, row.g), (row.r_plus, row.d_plus, row.g_plus)
        )
    star = ContractionType.from_label(row.type_right)
    if row.family in ("e1e2", "e1e3", "e1e5"):
        return search_mod.build_e1estar(
            row.kx3, (row.r, row.d, row.g), star, as_integer(row.alpha_plus), as_integer(row.beta_plus)
        )
    return search_mod.build_symmetric(star, as_integer(row.alpha), row.kx3)


def _candidate_from_tuple(family: str, numbers: list[int]) -> "search_mod.LinkCandidate":
    star = {
        "e1e2": ContractionType.E2,
        "e1e3": ContractionType.E34,
        "e1e5": ContractionType.E5,
        "e2e2": ContractionType.E2,
        "e3e3": ContractionType.E34,
        "e5e5": ContractionType.E5,
    }.get(family)
    if family == "e1e1":
        if len(numbers) != 7:
            raise ValueError("e1e1 tuple is (kx3, r, d, g, r_plus, d_plus, g_plus)")
        kx3, r, d, g, rp, dp, gp = numbers
        return search_mod.build_e1e1(kx3, (r, d, g), (rp, dp, gp))
    if family in ("e1e2", "e1e3", "e1e5"):
        if len(numbers) != 6:
            raise ValueError(f"{family} tuple is (kx3, r, d, g, alpha_plus, beta_plus)")
        kx3, r, d, g, ap, bp = numbers
        return search_mod.build_e1estar(kx3, (r, d, g), star, ap, bp)
    if family in ("e2e2", "e3e3", "e5e5"):
        if len(numbers) != 2:
            raise ValueError(f"{family} tuple is (kx3, alpha)")
        kx3, alpha = numbers
        return search_mod.build_symmetric(star, alpha, kx3)
    raise ValueError(f"unknown family: {family!r}")


def _resolve_explain_target(family: str, key_tokens: list[str]) -> "search_mod.LinkCandidate":
    text = " ".join(key_tokens).strip()
    if text.lower().startswith("row"):
        number_text = text[3:].strip()
        if not number_text.lstrip("-").isdigit():
            raise ValueError(f"bad row number: {number_text!r}")
        number = int(number_text)
        for row in golden_mod.golden_for_family(family):
            if row.row == number:
                return _candidate_from_golden_row(row)
        raise ValueError(f"no golden row {number} in family {family}")
    cleaned = text.strip("()")
    try:
        numbers = [int(part.strip()) for part in cleaned.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"cannot parse tuple: {text!r}") from None
    return _candidate_from_tuple(family, numbers)


def _cmd_explain(args: argparse.Namespace) -> int:
    family = args.family
    if family not in search_mod.FAMILY_IDS:
        print(
            f"error: unknown family: {family!r} (choose from {', '.join(search_mod.FAMILY_IDS)})",
            file=sys.stderr,
        )
        return 2
    try:
        candidate = _resolve_explain_target(family, args.key)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    coeffs = candidate.coeffs
    print(f"family: {candidate.family}")
    print(f"central degree -K_X^3: {candidate.kx3}")
    for role, side, sig, ky3 in (
        ("left", candidate.left, candidate.sigma_left, candidate.kY3_left),
        ("right", candidate.right, candidate.sigma_right, candidate.kY3_right),
    ):
        if side.is_e1:
            datum = f"E1 (r={side.r}, d={side.d}, g={side.g})"
        else:
            datum = side.ctype.label
        print(f"{role} side: {datum}, sigma={sig}, target degree {render_exact(ky3)}")
    print(
        "coefficients: "
        f"alpha={render_exact(coeffs.alpha)}, beta={render_exact(coeffs.beta)}, "
        f"alpha_plus={render_exact(coeffs.alpha_plus)}, beta_plus={render_exact(coeffs.beta_plus)}"
    )
    print(
        "flopped divisor cubes: "
        f"left={render_exact(candidate.etilde3_left)}, right={render_exact(candidate.etilde3_right)}"
    )
    defect_left = "non-integral" if candidate.defect_e is None else str(candidate.defect_e)
    defect_right = "non-integral" if candidate.defect_e_plus is None else str(candidate.defect_e_plus)
    norm = candidate.e_over_r3
    norm_text = "non-integral" if norm is None else render_exact(norm)
    print(f"defects: e={defect_left}, e_plus={defect_right}, e/r^3={norm_text}")
    if candidate.left.is_e1:
        lead = coeffs.alpha * candidate.left.r
        diff_term = coeffs.beta - coeffs.alpha
        print(
            "left-basis decomposition (alpha*r, beta-alpha): "
            f"({render_exact(lead)}, {render_exact(diff_term)})"
        )
    if candidate.right.is_e1:
        lead = coeffs.alpha_plus * candidate.right.r
        diff_term = coeffs.beta_plus - coeffs.alpha_plus
        print(
            "right-basis decomposition (alpha_plus*r_plus, beta_plus-alpha_plus): "
            f"({render_exact(lead)}, {render_exact(diff_term)})"
        )
    print("checks:")
    reports = checks_mod.run_checks(candidate)
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        print(f"  {status} {report.name}: {report.detail}")
    print(f"verdict: {'admitted' if checks_mod.admitted(reports) else 'rejected'}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors.
        return int(exc.code or 0)

    if getattr(args, "list_checks", False):
        _print_check_listing(sys.stdout)
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    try:
        if args.command == "enumerate":
            return _cmd_enumerate(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_explain(args)
    except Exception as exc:  # noqa: BLE001 - contract: internal errors exit 3
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
