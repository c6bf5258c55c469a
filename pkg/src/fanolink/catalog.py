"""Degree and Hodge-number catalog for the smooth target varieties.

Both ends of an admissible link contract onto a smooth Fano threefold of
Picard rank one whose Fano index is 1..4.  For each index the anticanonical
degree is restricted to a known finite list; each admissible (index, degree)
pair carries one Hodge number h^{1,2}.  The degree lists are encoded as
small data rules plus one predicate rather than hard-coded branches, and the
h^{1,2} values live in a packaged data file that the loader cross-validates
against the rules (exactly one line per admissible pair, no duplicates).

The numeric classification itself is the authority that keeps this file
honest: the golden-table reproduction tests fail if any entry drifts.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Iterator, Mapping

from .rational import is_integer

MIN_INDEX = 1
MAX_INDEX = 4


@dataclass(frozen=True)
class DegreeRule:
    """Admissible anticanonical degrees for one Fano index.

    A degree k is admissible iff lo <= k <= hi, modulus | k, and k is not
    in the excluded tuple.
    """

    lo: int
    hi: int
    modulus: int
    excluded: tuple[int, ...] = ()

    def admits(self, degree: int) -> bool:
        return (
            self.lo <= degree <= self.hi
            and degree % self.modulus == 0
            and degree not in self.excluded
        )

    def expand(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.lo, self.hi + 1) if self.admits(k))


# Index 1 degrees are the even values 2..22 with 20 absent from the
# classification; higher indices are forced onto multiples of index**3.
DEGREE_RULES: dict[int, DegreeRule] = {
    1: DegreeRule(lo=2, hi=22, modulus=2, excluded=(20,)),
    2: DegreeRule(lo=8, hi=40, modulus=8),
    3: DegreeRule(lo=54, hi=54, modulus=27),
    4: DegreeRule(lo=64, hi=64, modulus=64),
}


class CatalogError(ValueError):
    """Malformed or inconsistent catalog data file."""


def _check_index(index: int) -> None:
    if index not in DEGREE_RULES:
        raise ValueError(f"Fano index out of range 1..4: {index!r}")


def is_valid_fano_degree(index: int, degree: Fraction | int) -> bool:
    """True iff ``degree`` is an integer admissible for this Fano index."""
    _check_index(index)
    if not is_integer(degree):
        return False
    return DEGREE_RULES[index].admits(int(degree))


def admissible_pairs() -> tuple[tuple[int, int], ...]:
    """All (index, degree) pairs the rules admit, in catalog order."""
    return tuple(
        (index, degree)
        for index in sorted(DEGREE_RULES)
        for degree in DEGREE_RULES[index].expand()
    )


def parse_hodge_table(lines: Iterable[str], source: str = "<memory>") -> dict[tuple[int, int], int]:
    """Parse 'index degree h12' lines, validating against the degree rules.

    Blank lines and '#' comments are skipped.  Errors carry the source name
    and line number.  The parsed table must contain exactly one entry per
    admissible (index, degree) pair and non-negative h12 values.
    """
    table: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise CatalogError(f"{source}:{lineno}: expected 'index degree h12', got {raw.strip()!r}")
        try:
            index, degree, h12 = (int(p) for p in parts)
        except ValueError:
            raise CatalogError(f"{source}:{lineno}: non-integer field in {raw.strip()!r}") from None
        if index not in DEGREE_RULES:
            raise CatalogError(f"{source}:{lineno}: Fano index out of range 1..4: {index}")
        if not DEGREE_RULES[index].admits(degree):
            raise CatalogError(f"{source}:{lineno}: degree {degree} not admissible for index {index}")
        if h12 < 0:
            raise CatalogError(f"{source}:{lineno}: negative h12 value {h12}")
        key = (index, degree)
        if key in table:
            raise CatalogError(f"{source}:{lineno}: duplicate entry for {key}")
        table[key] = h12
    missing = set(admissible_pairs()) - set(table)
    if missing:
        raise CatalogError(f"{source}: missing entries for admissible pairs: {sorted(missing)}")
    return table


def load_hodge_table() -> dict[tuple[int, int], int]:
    """Load and validate the packaged h^{1,2} data file."""
    res = resources.files(__package__).joinpath("data/hodge_h12.txt")
    text = res.read_text(encoding="utf-8")
    return parse_hodge_table(text.splitlines(), source="hodge_h12.txt")


_HODGE_TABLE: Mapping[tuple[int, int], int] | None = None


def _active_table() -> Mapping[tuple[int, int], int]:
    global _HODGE_TABLE
    if _HODGE_TABLE is None:
        _HODGE_TABLE = load_hodge_table()
    return _HODGE_TABLE


@contextlib.contextmanager
def override_hodge_table(table: Mapping[tuple[int, int], int]) -> Iterator[None]:
    """Temporarily replace the active h12 table (single-process scope).

    Exists for sensitivity tests that re-run the enumeration under a
    deliberately perturbed catalog; production code never calls this.
    """
    global _HODGE_TABLE
    previous = _HODGE_TABLE
    _HODGE_TABLE = dict(table)
    try:
        yield
    finally:
        _HODGE_TABLE = previous


def hodge_h12(index: int, degree: Fraction | int) -> int:
    """h^{1,2} of the rank-one smooth Fano with this index and degree.

    Raises on any (index, degree) the rules do not admit.
    """
    if not is_valid_fano_degree(index, degree):
        raise ValueError(f"no catalog entry: index {index}, degree {degree}")
    return _active_table()[(index, int(degree))]
