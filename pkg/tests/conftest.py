from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sepdraw.enumeration import default_tables, enumerate_good_drawings


@pytest.fixture(scope="session")
def tables():
    return default_tables()


@pytest.fixture(scope="session")
def enum5():
    """All enumerated drawings up to n=5 (fast)."""
    return {n: enumerate_good_drawings(n) for n in (3, 4, 5)}


@pytest.fixture(scope="session")
def enum6():
    """The n=6 level (a few seconds; shared across tests)."""
    return enumerate_good_drawings(6)
