import numpy as np
import pytest

from giniroc.datasets import (
    RATING_CLASSES,
    allocate_counts,
    bundled_path,
    geometric_frequencies,
    load_bundled,
    make_softmax_scores,
    make_synthetic_3class,
    make_synthetic_9class,
)


@pytest.mark.parametrize(
    "name, builder", [("synthetic_3class", make_synthetic_3class),
                      ("synthetic_9class", make_synthetic_9class)],
)
def test_bundled_files_match_generators(name, builder):
    assert load_bundled(name) == builder()


def test_nine_class_fixture_shape():
    ds = load_bundled("synthetic_9class")
    assert ds.class_names == list(RATING_CLASSES)
    assert ds.n_samples == 1200
    counts = ds.class_counts
    assert np.all(np.diff(counts) < 0) and counts.min() >= 1


def test_geometric_frequencies():
    f = geometric_frequencies(4, 0.5)
    np.testing.assert_allclose(f, np.array([8, 4, 2, 1]) / 15)


@pytest.mark.parametrize("n", [9, 10, 101, 1200])
def test_allocate_counts(n):
    counts = allocate_counts(n, geometric_frequencies(9, 0.3))
    assert counts.sum() == n and counts.min() >= 1


def test_softmax_rows_sum_to_one():
    ds = make_softmax_scores(50, [0.5, 0.5], 1.0, decimals=None)
    np.testing.assert_allclose(ds.scores.sum(axis=1), 1.0, atol=1e-12)


def test_unknown_bundled_name():
    with pytest.raises(KeyError):
        bundled_path("nope")
