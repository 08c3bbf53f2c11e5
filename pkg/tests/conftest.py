import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from giniroc import EvaluationDataset  # noqa: E402


def perfect_dataset(n=90, k=3, seed=0):
    """Scores where every true class column beats every other sample."""
    rng = np.random.default_rng(seed)
    labels = np.arange(n) % k
    scores = rng.uniform(0.0, 0.4, size=(n, k))
    scores[np.arange(n), labels] = rng.uniform(0.6, 1.0, size=n)
    return EvaluationDataset.from_arrays(labels, scores)


def random_dataset(n=1000, k=3, seed=0):
    """Scores independent of the labels."""
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, k, size=n)
    labels[:k] = np.arange(k)
    return EvaluationDataset.from_arrays(labels, rng.uniform(size=(n, k)))


def softmax_dataset(n=600, k=4, seed=0, strength=1.5):
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, k, size=n)
    labels[:k] = np.arange(k)
    logits = rng.normal(size=(n, k)) + strength * np.eye(k)[labels]
    probs = np.exp(logits)
    return EvaluationDataset.from_arrays(labels, probs / probs.sum(axis=1, keepdims=True))


@pytest.fixture
def perfect3():
    return perfect_dataset()


@pytest.fixture
def random3():
    return random_dataset()


ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
