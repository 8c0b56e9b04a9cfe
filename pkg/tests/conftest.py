import os
from pathlib import Path

import numpy as np
import pytest

from oracles import write_tu

REPO = Path(__file__).resolve().parents[1]
DATA_DIR = Path(os.environ.get("EGVQC_DATA_DIR", REPO / "data"))

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config.stash[_ACCEPTANCE_KEY].append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def mutag(data_dir):
    from egvqc.graphs import load_tu_dataset

    path = data_dir / "MUTAG"
    if not (path / "MUTAG_A.txt").is_file():
        pytest.skip("MUTAG files not present")
    return load_tu_dataset(path, "MUTAG")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def six_class_dir(tmp_path):
    """Synthetic six-class dataset in TU layout; a few graphs exceed 7 vertices."""
    r = np.random.default_rng(7)
    graphs, labels = [], []
    for i in range(48):
        cls = i % 6
        n = int(r.integers(3, 8)) if i % 8 else 10
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if r.random() < 0.2 + 0.12 * cls]
        if not edges:
            edges = [(1, 2)]
        graphs.append((n, edges))
        labels.append(cls + 1)
    return write_tu(tmp_path / "SIX", "SIX", graphs, labels)
