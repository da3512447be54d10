import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import chroma

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def karate_path() -> Path:
    return DATA / "karate.txt"


@pytest.fixture(scope="session")
def karate(karate_path) -> "chroma.Graph":
    return chroma.load_edge_list(karate_path)
