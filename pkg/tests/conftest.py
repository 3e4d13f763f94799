"""
Shared fixtures and hypothesis strategies.
"""

import numpy as np
import pytest
from hypothesis import strategies as st

from src.perm_core import Permutation, from_cycles
from src.settings import DEFAULTS
from src.output_formatter import OutputFormatter


def cyc(n, *cycles):
    """Permutation of degree n from cycle tuples: cyc(5, (1, 2), (3, 4, 5))."""
    return from_cycles(n, cycles)


def perms_of_degree(n):
    return st.permutations(range(1, n + 1)).map(Permutation.from_images)


def perm_lists(count, min_n=1, max_n=9):
    """`count` permutations sharing one random degree."""
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.tuples(*[perms_of_degree(n) for _ in range(count)])
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def formatter():
    return OutputFormatter(DEFAULTS)


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under tmp_path and return its path as a string."""
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _write
