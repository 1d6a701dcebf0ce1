from pathlib import Path

import pytest

from pricetiers import validate_market

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def market_a():
    return validate_market([(4.0, 1), (1.0, 1)], 1.0)


@pytest.fixture
def market_b():
    return validate_market([(10.0, 1), (2.0, 1)], 2.0)


@pytest.fixture
def market_c():
    return validate_market([(16.0, 1), (4.0, 1), (1.0, 1)], 3.0)


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR
