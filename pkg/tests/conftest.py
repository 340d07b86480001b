from pathlib import Path

import pytest
from hypothesis import settings

# Deterministic property tests: same examples every run.
settings.register_profile("deterministic", derandomize=True, max_examples=150)
settings.load_profile("deterministic")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
