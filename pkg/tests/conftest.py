import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
FIXTURES = TESTS_DIR.parent / "fixtures"

# make `oracles.*` importable from test modules
sys.path.insert(0, str(TESTS_DIR))

from wikilink.build import build_network  # noqa: E402


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def mini_net():
    """The 20-page fixture dump built once per session."""
    return build_network(FIXTURES / "mini-dump.xml", FIXTURES / "vectors.txt")
