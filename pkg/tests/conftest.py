import numpy as np
import pytest

from lxcim import Dataset, make_abs_spec


@pytest.fixture(scope="session")
def spec0():
    return make_abs_spec(0.0)


@pytest.fixture()
def d0():
    """Four-sample worked example: one of each confusion cell, accuracy 1/2."""
    return Dataset([-4, -3, 1, 2], [0, 1, 0, 1])


@pytest.fixture()
def perfect_pair():
    return Dataset([2, -2], [1, 0])


@pytest.fixture()
def wrong_pair():
    return Dataset([2, -2], [0, 1])


@pytest.fixture()
def tie_pair():
    """Equal confidence, one correct and one wrong decision."""
    return Dataset([1, -1], [1, 1])


def random_dataset(rng: np.random.Generator, n: int, *, weighted: bool = True) -> Dataset:
    scores = rng.uniform(-1.0, 1.0, n)
    while np.any(scores == 0.0):
        scores[scores == 0.0] = rng.uniform(-1.0, 1.0, int(np.sum(scores == 0.0)))
    labels = rng.integers(0, 2, n)
    weights = rng.uniform(0.05, 2.0, n) if weighted else None
    return Dataset(scores, labels, weights)
