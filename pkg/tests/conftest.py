import pathlib

import pytest

from growthlab.cli import ingest_csv

DATA_DIR = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def gdp_path() -> str:
    return str(DATA_DIR / "world_gdp.csv")


@pytest.fixture(scope="session")
def gdp_series(gdp_path):
    return ingest_csv(gdp_path)
