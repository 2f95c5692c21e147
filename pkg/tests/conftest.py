from pathlib import Path

import pytest

from modgen.pipeline import build_and_verify
from modgen.schemas import ConverterSpec

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def converter_3_3():
    return build_and_verify(ConverterSpec(n=3, p=3))


@pytest.fixture(scope="session")
def golden_converters():
    """The (n, p) instances the emission round-trip runs on."""
    return [build_and_verify(ConverterSpec(n=n, p=p)) for n, p in [(3, 3), (5, 5), (10, 7)]]
