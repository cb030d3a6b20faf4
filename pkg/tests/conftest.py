from pathlib import Path

import pytest

from sln import parse_notebook

DATA_DIR = Path(__file__).parent / "data"
SAMPLE_PATH = DATA_DIR / "sample_soho.sln"


@pytest.fixture(scope="session")
def sample_bytes() -> bytes:
    return SAMPLE_PATH.read_bytes()


@pytest.fixture(scope="session")
def sample_notebook(sample_bytes):
    return parse_notebook(sample_bytes)
