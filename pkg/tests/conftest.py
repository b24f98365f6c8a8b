from pathlib import Path

import pytest

from corpusgen import build_corpus

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixture_corpus() -> Path:
    """Committed 3-file, 10-sentence corpus with fully hand-traced contents."""
    return FIXTURES / "corpus"


@pytest.fixture
def broken_dir() -> Path:
    return FIXTURES / "broken"


@pytest.fixture(scope="session")
def smoke_corpus(tmp_path_factory) -> Path:
    """Deterministic 8-file, 200-sentence synthetic corpus."""
    return build_corpus(tmp_path_factory.mktemp("smoke-corpus"))
