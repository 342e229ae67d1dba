"""
Pytest configuration and shared fixtures for pmatrixcheck tests
"""

import os
import random
import tempfile
from pathlib import Path
from typing import Generator
from unittest.mock import patch

import pytest

# Import configuration first (before the core modules)
from pmatrixcheck.config import Config
from pmatrixcheck.core.exact_linalg import RationalMatrix
from pmatrixcheck.core.graph_maxcut import build_graph
from pmatrixcheck.utils.sweep import SweepExecutor, set_sweep_executor


# ============================================================================
# Configuration Fixtures
# ============================================================================


@pytest.fixture
def mock_env_vars():
    """Mock environment variables for testing"""
    env_vars = {"ENV": "development"}

    with patch.dict(os.environ, env_vars, clear=False):
        yield env_vars


@pytest.fixture
def test_config(mock_env_vars):
    """Create a test configuration instance"""
    return Config()


@pytest.fixture(autouse=True)
def sequential_sweeps():
    """Every test starts from an in-process sweep executor"""
    set_sweep_executor(SweepExecutor(max_workers=1))
    yield
    set_sweep_executor(None)


@pytest.fixture
def threaded_sweeps():
    """Force a parallel thread-pool sweep even for tiny enumerations"""
    executor = SweepExecutor(
        max_workers=3, worker_type="thread", min_parallel_size=1, chunk_size=2
    )
    set_sweep_executor(executor)
    return executor


# ============================================================================
# Graph Fixtures
# ============================================================================


@pytest.fixture
def single_edge():
    return build_graph(2, [(1, 2)])


@pytest.fixture
def triangle():
    """K_3"""
    return build_graph(3, [(1, 2), (1, 3), (2, 3)])


@pytest.fixture
def k4():
    return build_graph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


@pytest.fixture
def edgeless():
    return build_graph(3, [])


# ============================================================================
# Matrix Fixtures
# ============================================================================


def matrix(rows) -> RationalMatrix:
    """Shorthand used throughout the tests"""
    return RationalMatrix.from_rows(rows)


@pytest.fixture
def triangle_matrix():
    """7I - A(K_3), the MAX CUT reduction matrix of the triangle"""
    return matrix([[7, -1, -1], [-1, 7, -1], [-1, -1, 7]])


@pytest.fixture
def rng():
    """Seeded generator for randomized tests"""
    return random.Random(20071018)


# ============================================================================
# File and Directory Fixtures
# ============================================================================


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for testing"""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def write_file(temp_dir):
    """Write text into temp_dir and return the path"""

    def _write(name: str, text: str) -> Path:
        path = temp_dir / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def triangle_file(write_file) -> Path:
    return write_file("triangle.txt", "3 3\n1 2\n1 3\n2 3\n")


@pytest.fixture
def single_edge_file(write_file) -> Path:
    return write_file("edge.txt", "2 1\n1 2\n")


@pytest.fixture
def edgeless_file(write_file) -> Path:
    return write_file("edgeless.txt", "3 0\n")
