"""Serialization of candidate sets: CSV, JSON, markdown, LaTeX.

CSV and JSON are the machine formats: every rational is exact (bare
integer or 'n/d'), columns follow the canonical per-family schema shared
with the golden tables, and output is byte-deterministic given the
candidate order.  Markdown and LaTeX are display formats that mirror the
reference tables' visual layout, printing coefficient columns with the
same decimal typography (halves to one place, quarters to two) and degree
columns as exact fractions.

Existence status and literature reference are classification metadata,
not derivable from arithmetic; they are joined onto computed rows from
the golden tables and left empty for rows without a golden counterpart.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .golden import GoldenRow, candidate_key, golden_key
from .model import LinkCandidate
from .rational import as_integer, is_integer, render_exact, render_table

_SYMMETRIC_FAMILIES = ("e2e2", "e3e3", "e5e5")

_CSV_HEADERS: dict[str, list[str]] = {
    "e1e1": [
        "kx3", "type_left", "type_right", "r", "d", "g", "r_plus", "d_plus", "g_plus",
        "alpha", "beta", "kY3", "kY3_plus", "e_over_r3", "exists", "ref",
    ],
    "e1estar": [
        "kx3", "type_left", "type_right", "r", "d", "g",
        "alpha", "beta", "kY3", "kY3_plus", "e_over_r3", "exists", "ref",
    ],
    "symmetric": [
        "kx3", "type_left", "type_right", "alpha", "beta", "kY3", "e", "exists", "ref",
    ],
}


def _schema(family: str) -> str:
    if family == "e1e1":
        return "e1e1"
    if family in ("e1e2", "e1e3", "e1e5"):
        return "e1estar"
    return "symmetric"


def csv_header(family: str) -> list[str]:
    return list(_CSV_HEADERS[_schema(family)])


def _status_fields(
    candidate: LinkCandidate, golden_index: Mapping[tuple, GoldenRow]
) -> tuple[str, str]:
    row = golden_index.get(candidate_key(candidate))
    if row is None:
        return "", ""
    return row.exists.value, row.ref


def build_golden_index(rows: Iterable[GoldenRow]) -> dict[tuple, GoldenRow]:
    return {golden_key(row): row for row in rows}


def _candidate_cells(
    candidate: LinkCandidate, golden_index: Mapping[tuple, GoldenRow]
) -> dict[str, object]:
    """All canonical column values for one candidate, exactly typed."""
    exists, ref = _status_fields(candidate, golden_index)
    cells: dict[str, object] = {
        "kx3": candidate.kx3,
        "type_left": candidate.left.ctype.label,
        "type_right": candidate.right.ctype.label,
        "alpha": candidate.coeffs.alpha,
        "beta": candidate.coeffs.beta,
        "kY3": candidate.kY3_left,
        "exists": exists,
        "ref": ref,
    }
    schema = _schema(candidate.family)
    if schema == "symmetric":
        cells["e"] = candidate.defect_e
        return cells
    cells["r"] = candidate.left.r
    cells["d"] = candidate.left.d
    cells["g"] = candidate.left.g
    cells["kY3_plus"] = candidate.kY3_right
    cells["e_over_r3"] = candidate.e_over_r3
    if schema == "e1e1":
        cells["r_plus"] = candidate.right.r
        cells["d_plus"] = candidate.right.d
        cells["g_plus"] = candidate.right.g
    return cells


def _machine_str(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return render_exact(value)


def _json_value(value: object) -> object:
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and is_integer(value):
        return as_integer(value)
    return render_exact(value)


# ---------------------------------------------------------------------------
# Machine formats


def render_csv(
    families: Sequence[tuple[str, Sequence[LinkCandidate]]],
    golden_index: Mapping[tuple, GoldenRow],
) -> str:
    """Canonical CSV; one commented section per requested family."""
    out = io.StringIO()
    first = True
    for family, candidates in families:
        if not first:
            out.write("\n")
        first = False
        out.write(f"# family: {family}\n")
        writer = csv.writer(out, lineterminator="\n")
        header = csv_header(family)
        writer.writerow(header)
        for candidate in candidates:
            cells = _candidate_cells(candidate, golden_index)
            writer.writerow([_machine_str(cells[column]) for column in header])
    return out.getvalue()


def render_json(
    families: Sequence[tuple[str, Sequence[LinkCandidate]]],
    golden_index: Mapping[tuple, GoldenRow],
) -> str:
    """Flat JSON array of row objects in canonical column order."""
    records = []
    for family, candidates in families:
        header = csv_header(family)
        for candidate in candidates:
            cells = _candidate_cells(candidate, golden_index)
            record = {column: _json_value(cells[column]) for column in header}
            if record["exists"] == "":
                record["exists"] = None
            if record["ref"] == "":
                record["ref"] = None
            records.append(record)
    return json.dumps(records, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Display formats


_DISPLAY_COLUMNS: dict[str, list[tuple[str, str]]] = {
    # (column id, display heading); '#' is the running row number.
    "e1e1": [
        ("no", "#"), ("kx3", "-K_X^3"), ("kY3", "-K_Y^3"), ("kY3_plus", "-K_Y+^3"),
        ("alpha", "alpha"), ("beta", "beta"),
        ("r", "r"), ("d", "d"), ("g", "g"),
        ("r_plus", "r+"), ("d_plus", "d+"), ("g_plus", "g+"),
        ("e_over_r3", "e/r^3"), ("exists", "exists"), ("ref", "ref"),
    ],
    "e1estar": [
        ("no", "#"), ("kx3", "-K_X^3"), ("kY3", "-K_Y^3"), ("kY3_plus", "-K_Y+^3"),
        ("alpha", "alpha"), ("beta", "beta"),
        ("r", "r"), ("d", "d"), ("g", "g"),
        ("e_over_r3", "e/r^3"), ("exists", "exists"), ("ref", "ref"),
    ],
    "symmetric": [
        ("no", "#"), ("kx3", "-K_X^3"), ("kY3", "-K_Y^3"),
        ("alpha", "alpha"), ("beta", "beta"),
        ("e", "e"), ("exists", "exists"), ("ref", "ref"),
    ],
}

# Coefficient columns use the tables' decimal typography; degree columns
# stay exact fractions.
_TABLE_STYLE_COLUMNS = ("alpha", "beta")


def _display_str(column: str, value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if column in _TABLE_STYLE_COLUMNS:
        return render_table(value)
    return render_exact(value)


def _display_rows(
    family: str,
    candidates: Sequence[LinkCandidate],
    golden_index: Mapping[tuple, GoldenRow],
) -> tuple[list[str], list[list[str]]]:
    spec = _DISPLAY_COLUMNS[_schema(family)]
    headings = [heading for _, heading in spec]
    table_rows = []
    for number, candidate in enumerate(candidates, start=1):
        cells = _candidate_cells(candidate, golden_index)
        cells["no"] = number
        table_rows.append([_display_str(column, cells[column]) for column, _ in spec])
    return headings, table_rows


def render_markdown(
    families: Sequence[tuple[str, Sequence[LinkCandidate]]],
    golden_index: Mapping[tuple, GoldenRow],
) -> str:
    blocks = []
    for family, candidates in families:
        headings, rows = _display_rows(family, candidates, golden_index)
        lines = [f"## {family}", ""]
        lines.append("| " + " | ".join(headings) + " |")
        lines.append("|" + "|".join(" --- " for _ in headings) + "|")
        for row in rows:
            lines.append("| " + " | ".join(row) + " |")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def render_latex(
    families: Sequence[tuple[str, Sequence[LinkCandidate]]],
    golden_index: Mapping[tuple, GoldenRow],
) -> str:
    math_headings = {
        "#": r"\#",
        "-K_X^3": "$-K_X^3$",
        "-K_Y^3": "$-K_Y^3$",
        "-K_Y+^3": "$-K_{Y^+}^3$",
        "alpha": r"$\alpha$",
        "beta": r"$\beta$",
        "r": "$r$", "d": "$d$", "g": "$g$",
        "r+": "$r^+$", "d+": "$d^+$", "g+": "$g^+$",
        "e/r^3": "$e/r^3$",
        "e": "$e$",
        "exists": "exists", "ref": "ref",
    }
    blocks = []
    for family, candidates in families:
        headings, rows = _display_rows(family, candidates, golden_index)
        column_spec = "r" * len(headings)
        lines = [f"% family: {family}", rf"\begin{{tabular}}{{{column_spec}}}"]
        lines.append(" & ".join(math_headings[h] for h in headings) + r" \\")
        lines.append(r"\hline")
        for row in rows:
            lines.append(" & ".join(row) + r" \\")
        lines.append(r"\end{tabular}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


# ---------------------------------------------------------------------------
# Golden-table round trip


def render_golden_csv(rows: Sequence[GoldenRow], family: str) -> str:
    """Serialize golden rows back to the canonical CSV schema.

    Loading the result again yields equal GoldenRow values (decimal
    spellings normalize to exact fractions; the values are unchanged).
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = csv_header(family)
    writer.writerow(header)
    for row in rows:
        cells = {
            "kx3": row.kx3,
            "type_left": row.type_left,
            "type_right": row.type_right,
            "r": row.r,
            "d": row.d,
            "g": row.g,
            "r_plus": row.r_plus,
            "d_plus": row.d_plus,
            "g_plus": row.g_plus,
            "alpha": row.alpha,
            "beta": row.beta,
            "kY3": row.kY3,
            "kY3_plus": row.kY3_plus,
            "e_over_r3": row.e_over_r3,
            "e": row.e,
            "exists": row.exists.value,
            "ref": row.ref,
        }
        writer.writerow([_machine_str(cells[column]) for column in header])
    return out.getvalue()


def render_dispatch(
    fmt: str,
    families: Sequence[tuple[str, Sequence[LinkCandidate]]],
    golden_index: Mapping[tuple, GoldenRow],
) -> str:
    renderers = {
        "csv": render_csv,
        "json": render_json,
        "markdown": render_markdown,
        "latex": render_latex,
    }
    if fmt not in renderers:
        raise ValueError(f"unknown format: {fmt!r}")
    return renderers[fmt](families, golden_index)
