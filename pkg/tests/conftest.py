"""Shared fixtures: one enumeration and one golden load per session.

Every family enumerates in well under a second, but dozens of tests need
the results; computing them once keeps the whole suite fast and makes the
assertions in different files provably about the same objects.
"""

from __future__ import annotations

import pytest

from fanolink.golden import golden_for_family
from fanolink.search import FAMILY_IDS, enumerate_family


@pytest.fixture(scope="session")
def enumerated() -> dict[str, tuple]:
    """Admitted candidates of every family, canonical order, default checks."""
    return {family: enumerate_family(family) for family in FAMILY_IDS}


@pytest.fixture(scope="session")
def golden() -> dict[str, tuple]:
    """Golden reference rows of every family, in table order."""
    return {family: golden_for_family(family) for family in FAMILY_IDS}
