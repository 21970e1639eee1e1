"""共通フィクスチャ"""
import random
from pathlib import Path

import pytest

from src.domain.cycloarith import set_working_precision
from src.infrastructure.corpus_repository import CorpusRepository

DATA_DIR = Path(__file__).parent / "data"

GROUP_IDS = ("c2", "c3", "c4", "c2xc2", "s3", "d4", "q8", "c6")


@pytest.fixture(autouse=True)
def default_precision():
    set_working_precision(53)
    yield
    set_working_precision(53)


@pytest.fixture(scope="session")
def corpus():
    return CorpusRepository()


@pytest.fixture(scope="session")
def tables(corpus):
    """コーパスの 8 つの群の指標表"""
    return {gid: corpus.load_group(gid) for gid in GROUP_IDS}


@pytest.fixture(scope="session")
def trivial_table(corpus):
    return corpus.load_group("trivial")


@pytest.fixture(scope="session")
def q_zeta5(corpus):
    return corpus.load_field("q_zeta5")


@pytest.fixture(scope="session")
def fields(corpus):
    return {entry.id: corpus.load_field(entry.id) for entry in corpus.get_all_entries("fields")}


@pytest.fixture
def rnd():
    return random.Random(20240607)


@pytest.fixture
def data_dir():
    return DATA_DIR
