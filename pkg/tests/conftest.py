from __future__ import annotations

import random

import pytest

from graded_descent.fields import get_gf, get_rational_function_field


@pytest.fixture
def rng():
    return random.Random(1729)


@pytest.fixture
def K():
    """GF(2)(u)."""
    return get_rational_function_field(2)


@pytest.fixture
def F5():
    return get_gf(5)
