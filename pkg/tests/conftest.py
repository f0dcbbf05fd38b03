from importlib import resources
from pathlib import Path

import pytest

from dimkit import TrigramHashEmbedding, load_kb

DATA = Path(str(resources.files("dimkit").joinpath("data")))


@pytest.fixture(scope="session")
def kb():
    return load_kb(DATA / "units.tsv")


@pytest.fixture(scope="session")
def emb():
    return TrigramHashEmbedding()


@pytest.fixture(scope="session")
def data_dir():
    return DATA
