from pathlib import Path

import pytest

from riskseries.cli import parse_csv
from riskseries.series import TimeSeries

DATA_DIR = Path(__file__).parent / "data"
FIXTURE_CSV = DATA_DIR / "extreme_precipitation.csv"
DETRENDED_CSV = DATA_DIR / "extreme_precipitation_detrended.csv"


@pytest.fixture(scope="session")
def event_series() -> TimeSeries:
    """The 31-event precipitation record (raw case-study fixture)."""
    return parse_csv(str(FIXTURE_CSV))


@pytest.fixture(scope="session")
def detrended_series() -> TimeSeries:
    """The published detrended companion column (see data/NOTES.md)."""
    return parse_csv(str(DETRENDED_CSV))


@pytest.fixture(scope="session")
def simple_series() -> TimeSeries:
    """The 12-point worked example used for the POT tables."""
    return TimeSeries.from_values(
        [200, 30, 40, 120, 80, 110, 180, 55, 190, 110, 20, 110]
    )


@pytest.fixture(scope="session")
def fixture_path() -> str:
    return str(FIXTURE_CSV)
