"""Synthetic score fixtures and the bundled example files."""

from importlib import resources

import numpy as np

from .dataset import EvaluationDataset, load_dataset

BUNDLED = {
    "synthetic_3class": "synthetic_3class.csv",
    "synthetic_9class": "synthetic_9class.csv",
}

RATING_CLASSES = ("AAA", "AA", "A", "BBB", "BB", "B", "CCC", "CC", "C&D")


def geometric_frequencies(k, ratio):
    """Class proportions ``p_i ∝ ratio**i``."""
    weights = ratio ** np.arange(k, dtype=np.float64)
    return weights / weights.sum()


def allocate_counts(n, frequencies):
    """Integer class counts summing to ``n`` with every class present."""
    frequencies = np.asarray(frequencies, dtype=np.float64)
    counts = np.maximum(np.floor(n * frequencies).astype(int), 1)
    order = np.argsort(-(n * frequencies - np.floor(n * frequencies)), kind="stable")
    i = 0
    while counts.sum() < n:
        counts[order[i % counts.size]] += 1
        i += 1
    while counts.sum() > n:
        counts[np.argmax(counts)] -= 1
    return counts


def make_softmax_scores(n, frequencies, separation, seed=0, class_names=None, decimals=6):
    """Softmax probability scores with a logit boost on the true class.

    Parameters
    ----------
    n : int
    frequencies : array-like of shape (k,)
        Class proportions; every class gets at least one sample.
    separation : float or array-like of shape (k,)
        Logit added to each sample's true class. Larger is easier.
    seed : int
    class_names : sequence of str, optional
    decimals : int or None
        Round the probabilities, as a model export typically would.
    """
    rng = np.random.default_rng(seed)
    frequencies = np.asarray(frequencies, dtype=np.float64)
    k = frequencies.size
    counts = allocate_counts(n, frequencies)
    labels = rng.permutation(np.repeat(np.arange(k), counts))
    separation = np.broadcast_to(np.asarray(separation, dtype=np.float64), (k,))
    logits = rng.normal(size=(n, k)) + np.log(frequencies)
    logits[np.arange(n), labels] += separation[labels]
    logits -= logits.max(axis=1, keepdims=True)
    probs = np.exp(logits)
    probs /= probs.sum(axis=1, keepdims=True)
    if decimals is not None:
        probs = np.round(probs, decimals)
    if class_names is None:
        class_names = [f"c{i}" for i in range(k)]
    return EvaluationDataset(tuple(class_names), labels, probs)


def make_synthetic_3class(seed=3):
    return make_softmax_scores(
        300, [0.5, 0.3, 0.2], separation=[2.0, 1.5, 1.0], seed=seed,
        class_names=["alpha", "beta", "gamma"],
    )


def make_synthetic_9class(seed=9):
    """Imbalanced nine-class ratings fixture with geometric class frequencies.

    The frequent classes are well separated and the rare ones barely so.
    """
    frequencies = geometric_frequencies(9, 0.6)
    separation = np.linspace(2.5, 0.5, 9)
    return make_softmax_scores(
        1200, frequencies, separation=separation, seed=seed, class_names=RATING_CLASSES,
    )


def bundled_path(name):
    """Filesystem path of a bundled fixture (``synthetic_3class`` or ``synthetic_9class``)."""
    try:
        filename = BUNDLED[name]
    except KeyError:
        raise KeyError(f"unknown bundled dataset {name!r}; choose from {sorted(BUNDLED)}") from None
    return resources.files("giniroc") / "data" / filename


def load_bundled(name):
    with resources.as_file(bundled_path(name)) as path:
        return load_dataset(path)
