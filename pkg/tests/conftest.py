import os
import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from models.code_graph import CodeGraph, DegreeDistribution  # noqa: E402
from services.code_construction import peg_construct  # noqa: E402
from utils.processing_logger import processing_logger  # noqa: E402

HAMMING_H = np.array([
    [1, 1, 0, 1, 1, 0, 0],
    [1, 0, 1, 1, 0, 1, 0],
    [0, 1, 1, 1, 0, 0, 1],
])


def pytest_collection_modifyitems(config, items):
    if os.getenv('RUN_SLOW') == '1':
        return
    skip_slow = pytest.mark.skip(reason="set RUN_SLOW=1 to run Monte-Carlo acceptance tests")
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def _quiet_processing_log(monkeypatch):
    monkeypatch.setattr(processing_logger, 'enabled', False)


@pytest.fixture
def single_parity() -> CodeGraph:
    """H = [1 1]"""
    return CodeGraph.from_dense([[1, 1]])


@pytest.fixture
def hamming() -> CodeGraph:
    return CodeGraph.from_dense(HAMMING_H)


@pytest.fixture(scope='session')
def small_peg() -> CodeGraph:
    return peg_construct(96, 48, DegreeDistribution.regular(3, 6), seed=3)


@pytest.fixture
def hamming_alist_path() -> Path:
    return ROOT / 'codes' / 'hamming_7_4.alist'
