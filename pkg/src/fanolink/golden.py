"""Golden classification tables: loading, validation, and diffing.

The nine packaged CSV files hold the reference classification rows the
enumeration must reproduce bit for bit.  Loading is strict: the header
must match the family schema, every value must parse exactly, stated
target degrees must agree with the degree formula, and each table must
contain its known number of rows.  Any violation raises GoldenDataError
with the file name and line number.

``diff`` compares an enumerated candidate set against golden rows column
by column in exact arithmetic and reports missing keys, extra keys, and
per-column mismatches; verification passes iff the report is empty.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .model import ContractionType, ExistenceStatus, LinkCandidate
from .rational import parse_rational

TABLE_FAMILY: dict[int, str] = {
    1: "e1e1",
    2: "e1e1",
    3: "e1e1",
    4: "e1e2",
    5: "e1e3",
    6: "e1e5",
    7: "e2e2",
    8: "e3e3",
    9: "e5e5",
}

FAMILY_TABLES: dict[str, tuple[int, ...]] = {
    "e1e1": (1, 2, 3),
    "e1e2": (4,),
    "e1e3": (5,),
    "e1e5": (6,),
    "e2e2": (7,),
    "e3e3": (8,),
    "e5e5": (9,),
}

TABLE_CARDINALITY: dict[int, int] = {1: 26, 2: 27, 3: 58, 4: 3, 5: 7, 6: 7, 7: 3, 8: 2, 9: 1}

# E1-E1 rows are numbered consecutively across their three tables.
ROW_OFFSET: dict[int, int] = {1: 0, 2: 26, 3: 53}

_E1E1_HEADER = [
    "kx3", "type_left", "type_right", "r", "d", "g", "r_plus", "d_plus", "g_plus",
    "alpha", "beta", "kY3", "kY3_plus", "e_over_r3", "exists", "ref",
]
_E1STAR_HEADER = [
    "kx3", "type_left", "type_right", "r", "d", "g",
    "alpha", "beta", "kY3", "kY3_plus", "e_over_r3", "exists", "ref",
]
_SYMMETRIC_HEADER = [
    "kx3", "type_left", "type_right", "alpha", "beta", "kY3", "e", "exists", "ref",
]

_STAR_DEGREE_OFFSET = {
    ContractionType.E2: Fraction(8),
    ContractionType.E34: Fraction(2),
    ContractionType.E5: Fraction(1, 2),
}


class GoldenDataError(ValueError):
    """Malformed or inconsistent golden table data."""


@dataclass(frozen=True)
class GoldenRow:
    """One reference classification row, with reconstructed coefficients."""

    table: int
    row: int
    family: str
    kx3: int
    type_left: str
    type_right: str
    r: int | None
    d: int | None
    g: int | None
    r_plus: int | None
    d_plus: int | None
    g_plus: int | None
    alpha: Fraction
    beta: Fraction
    alpha_plus: Fraction
    beta_plus: Fraction
    kY3: Fraction
    kY3_plus: Fraction | None
    e_over_r3: int | None
    e: int | None
    exists: ExistenceStatus
    ref: str


def _table_header(table: int) -> list[str]:
    family = TABLE_FAMILY[table]
    if family == "e1e1":
        return _E1E1_HEADER
    if family in ("e1e2", "e1e3", "e1e5"):
        return _E1STAR_HEADER
    return _SYMMETRIC_HEADER


def _table_text(table: int, data_dir: str | Path | None) -> tuple[str, str]:
    name = f"table{table}.csv"
    if data_dir is not None:
        path = Path(data_dir) / name
        return path.read_text(encoding="utf-8"), str(path)
    res = resources.files(__package__).joinpath(f"data/{name}")
    return res.read_text(encoding="utf-8"), name


def _parse_int(value: str, source: str, lineno: int, column: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise GoldenDataError(f"{source}:{lineno}: column {column}: not an integer: {value!r}") from None


def _parse_fraction(value: str, source: str, lineno: int, column: str) -> Fraction:
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError):
        raise GoldenDataError(f"{source}:{lineno}: column {column}: not a rational: {value!r}") from None


def _expect(condition: bool, source: str, lineno: int, message: str) -> None:
    if not condition:
        raise GoldenDataError(f"{source}:{lineno}: {message}")


def load_golden(table: int, data_dir: str | Path | None = None) -> tuple[GoldenRow, ...]:
    """Load and validate one golden table (1..9)."""
    if table not in TABLE_FAMILY:
        raise ValueError(f"table id out of range 1..9: {table}")
    family = TABLE_FAMILY[table]
    text, source = _table_text(table, data_dir)

    numbered = [
        (lineno, line)
        for lineno, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not numbered:
        raise GoldenDataError(f"{source}: empty table file")

    header_lineno, header_line = numbered[0]
    header = next(csv.reader([header_line]))
    expected_header = _table_header(table)
    _expect(
        header == expected_header,
        source,
        header_lineno,
        f"header mismatch: expected {expected_header}, got {header}",
    )

    rows: list[GoldenRow] = []
    for ordinal, (lineno, line) in enumerate(numbered[1:], start=1):
        fields = next(csv.reader([line]))
        _expect(
            len(fields) == len(expected_header),
            source,
            lineno,
            f"expected {len(expected_header)} fields, got {len(fields)}",
        )
        record = dict(zip(expected_header, (f.strip() for f in fields)))
        rows.append(_build_row(table, family, ordinal, record, source, lineno))

    _expect(
        len(rows) == TABLE_CARDINALITY[table],
        source,
        numbered[-1][0],
        f"table {table} must contain {TABLE_CARDINALITY[table]} rows, found {len(rows)}",
    )
    return tuple(rows)


def _build_row(
    table: int, family: str, ordinal: int, record: dict[str, str], source: str, lineno: int
) -> GoldenRow:
    kx3 = _parse_int(record["kx3"], source, lineno, "kx3")
    try:
        type_left = ContractionType.from_label(record["type_left"])
        type_right = ContractionType.from_label(record["type_right"])
        exists = ExistenceStatus.from_label(record["exists"])
    except ValueError as exc:
        raise GoldenDataError(f"{source}:{lineno}: {exc}") from None
    alpha = _parse_fraction(record["alpha"], source, lineno, "alpha")
    beta = _parse_fraction(record["beta"], source, lineno, "beta")
    _expect(beta != 0, source, lineno, "beta must be nonzero")
    # The star-side coefficient pair is determined by the printed pair.
    alpha_plus = -alpha / beta
    beta_plus = 1 / beta
    kY3 = _parse_fraction(record["kY3"], source, lineno, "kY3")

    r = d = g = r_plus = d_plus = g_plus = None
    kY3_plus: Fraction | None = None
    e_over_r3: int | None = None
    e: int | None = None

    if family == "e1e1":
        _expect(
            type_left is ContractionType.E1 and type_right is ContractionType.E1,
            source,
            lineno,
            f"types must be E1/E1, got {type_left.label}/{type_right.label}",
        )
        r = _parse_int(record["r"], source, lineno, "r")
        d = _parse_int(record["d"], source, lineno, "d")
        g = _parse_int(record["g"], source, lineno, "g")
        r_plus = _parse_int(record["r_plus"], source, lineno, "r_plus")
        d_plus = _parse_int(record["d_plus"], source, lineno, "d_plus")
        g_plus = _parse_int(record["g_plus"], source, lineno, "g_plus")
        kY3_plus = _parse_fraction(record["kY3_plus"], source, lineno, "kY3_plus")
        e_over_r3 = _parse_int(record["e_over_r3"], source, lineno, "e_over_r3")
        _expect(
            kY3 == kx3 + 2 * r * d + 2 - 2 * g,
            source,
            lineno,
            f"kY3 {kY3} inconsistent with degree formula for (kx3={kx3}, r={r}, d={d}, g={g})",
        )
        _expect(
            kY3_plus == kx3 + 2 * r_plus * d_plus + 2 - 2 * g_plus,
            source,
            lineno,
            f"kY3_plus {kY3_plus} inconsistent with degree formula for "
            f"(kx3={kx3}, r={r_plus}, d={d_plus}, g={g_plus})",
        )
    elif family in ("e1e2", "e1e3", "e1e5"):
        _expect(
            type_left is ContractionType.E1 and type_right is not ContractionType.E1,
            source,
            lineno,
            f"types must be E1/point, got {type_left.label}/{type_right.label}",
        )
        r = _parse_int(record["r"], source, lineno, "r")
        d = _parse_int(record["d"], source, lineno, "d")
        g = _parse_int(record["g"], source, lineno, "g")
        kY3_plus = _parse_fraction(record["kY3_plus"], source, lineno, "kY3_plus")
        e_over_r3 = _parse_int(record["e_over_r3"], source, lineno, "e_over_r3")
        _expect(
            kY3 == kx3 + 2 * r * d + 2 - 2 * g,
            source,
            lineno,
            f"kY3 {kY3} inconsistent with degree formula for (kx3={kx3}, r={r}, d={d}, g={g})",
        )
        _expect(
            kY3_plus == kx3 + _STAR_DEGREE_OFFSET[type_right],
            source,
            lineno,
            f"kY3_plus {kY3_plus} inconsistent with the {type_right.label} degree offset",
        )
    else:
        _expect(
            type_left is not ContractionType.E1 and type_left is type_right,
            source,
            lineno,
            f"types must be equal point types, got {type_left.label}/{type_right.label}",
        )
        e = _parse_int(record["e"], source, lineno, "e")
        _expect(
            kY3 == kx3 + _STAR_DEGREE_OFFSET[type_left],
            source,
            lineno,
            f"kY3 {kY3} inconsistent with the {type_left.label} degree offset",
        )

    return GoldenRow(
        table=table,
        row=ROW_OFFSET.get(table, 0) + ordinal,
        family=family,
        kx3=kx3,
        type_left=type_left.label,
        type_right=type_right.label,
        r=r,
        d=d,
        g=g,
        r_plus=r_plus,
        d_plus=d_plus,
        g_plus=g_plus,
        alpha=alpha,
        beta=beta,
        alpha_plus=alpha_plus,
        beta_plus=beta_plus,
        kY3=kY3,
        kY3_plus=kY3_plus,
        e_over_r3=e_over_r3,
        e=e,
        exists=exists,
        ref=record["ref"],
    )


def golden_for_family(family: str, data_dir: str | Path | None = None) -> tuple[GoldenRow, ...]:
    """All golden rows of one family, in table order."""
    if family not in FAMILY_TABLES:
        raise ValueError(f"unknown family: {family!r}")
    rows: list[GoldenRow] = []
    for table in FAMILY_TABLES[family]:
        rows.extend(load_golden(table, data_dir))
    return tuple(rows)


# ---------------------------------------------------------------------------
# Diffing


def golden_key(row: GoldenRow) -> tuple:
    if row.family == "e1e1":
        return (row.type_left, row.type_right, row.kx3, row.r, row.d, row.g,
                row.r_plus, row.d_plus, row.g_plus)
    if row.family in ("e1e2", "e1e3", "e1e5"):
        return (row.type_left, row.type_right, row.kx3, row.r, row.d, row.g)
    return (row.type_left, row.type_right, row.kx3)


def candidate_key(candidate: LinkCandidate) -> tuple:
    left, right = candidate.left, candidate.right
    if left.is_e1 and right.is_e1:
        return (left.ctype.label, right.ctype.label, candidate.kx3,
                left.r, left.d, left.g, right.r, right.d, right.g)
    if left.is_e1:
        return (left.ctype.label, right.ctype.label, candidate.kx3, left.r, left.d, left.g)
    return (left.ctype.label, right.ctype.label, candidate.kx3)


def _golden_values(row: GoldenRow) -> dict[str, Fraction | int]:
    values = {
        "alpha": row.alpha,
        "beta": row.beta,
        "alpha_plus": row.alpha_plus,
        "beta_plus": row.beta_plus,
        "kY3": row.kY3,
    }
    if row.family in ("e2e2", "e3e3", "e5e5"):
        values["e"] = row.e
    else:
        values["kY3_plus"] = row.kY3_plus
        values["e_over_r3"] = row.e_over_r3
    return values


def _candidate_values(candidate: LinkCandidate) -> dict[str, Fraction | int | None]:
    values = {
        "alpha": candidate.coeffs.alpha,
        "beta": candidate.coeffs.beta,
        "alpha_plus": candidate.coeffs.alpha_plus,
        "beta_plus": candidate.coeffs.beta_plus,
        "kY3": candidate.kY3_left,
    }
    if candidate.family in ("e2e2", "e3e3", "e5e5"):
        values["e"] = candidate.defect_e
    else:
        values["kY3_plus"] = candidate.kY3_right
        values["e_over_r3"] = candidate.e_over_r3
    return values


@dataclass(frozen=True)
class FieldMismatch:
    key: tuple
    column: str
    expected: Fraction | int | None
    actual: Fraction | int | None


@dataclass(frozen=True)
class DiffReport:
    """Outcome of comparing a computed candidate set against golden rows."""

    missing: tuple[tuple, ...]
    extra: tuple[tuple, ...]
    mismatches: tuple[FieldMismatch, ...]

    @property
    def empty(self) -> bool:
        return not (self.missing or self.extra or self.mismatches)

    def describe(self) -> str:
        if self.empty:
            return "exact match"
        lines: list[str] = []
        for key in self.missing:
            lines.append(f"missing row: {key}")
        for key in self.extra:
            lines.append(f"extra row: {key}")
        for mismatch in self.mismatches:
            lines.append(
                f"mismatch at {mismatch.key}: {mismatch.column} "
                f"expected {mismatch.expected}, got {mismatch.actual}"
            )
        return "\n".join(lines)


def diff(candidates: Sequence[LinkCandidate], golden: Iterable[GoldenRow]) -> DiffReport:
    """Exact column-by-column comparison of a candidate set with golden rows."""
    computed = {candidate_key(c): c for c in candidates}
    reference = {golden_key(row): row for row in golden}

    missing = tuple(sorted(set(reference) - set(computed), key=repr))
    extra = tuple(sorted(set(computed) - set(reference), key=repr))

    mismatches: list[FieldMismatch] = []
    for key in sorted(set(reference) & set(computed), key=repr):
        expected = _golden_values(reference[key])
        actual = _candidate_values(computed[key])
        for column, expected_value in expected.items():
            if actual[column] != expected_value:
                mismatches.append(FieldMismatch(key, column, expected_value, actual[column]))
    return DiffReport(missing=missing, extra=extra, mismatches=tuple(mismatches))
