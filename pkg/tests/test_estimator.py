import numpy as np
import pytest
from sklearn.base import clone

from conftest import perfect_dataset, softmax_dataset
from giniroc import GiniROC, evaluate, gini_roc_auc_score
from giniroc.exceptions import LabelVocabularyError, ShapeError


def test_params_and_clone():
    est = GiniROC(grid_size=64, n_bootstrap=20, random_state=3)
    params = est.get_params()
    assert params["grid_size"] == 64 and params["random_state"] == 3
    twin = clone(est)
    assert twin.get_params() == params
    assert not hasattr(twin, "weights_")


def test_fit_matches_pipeline():
    ds = softmax_dataset(n=300, k=4, seed=1)
    names = np.array(["a", "b", "c", "d"])
    est = GiniROC().fit(ds.scores, names[ds.labels])
    ref = evaluate(ds)
    np.testing.assert_array_equal(est.classes_, names)
    np.testing.assert_allclose(est.weights_, ref.decomposition.weights, atol=1e-15)
    assert est.auc_table_.gini_auc == ref.auc_table.gini_auc
    assert est.auc_table_.micro_auc == ref.auc_table.micro_auc
    assert est.band_ is None and est.curve_.kind == "aggregated"
    assert len(est.per_class_curves_) == 4


def test_explicit_class_order():
    ds = softmax_dataset(n=200, k=3, seed=2)
    labels = np.array(["z", "y", "x"])[ds.labels]
    est = GiniROC(classes=["z", "y", "x"]).fit(ds.scores, labels)
    assert est.auc_table_.gini_auc == evaluate(ds).auc_table.gini_auc


def test_class_count_mismatch():
    with pytest.raises(ShapeError):
        GiniROC().fit(np.random.default_rng(0).uniform(size=(10, 3)), [0, 1] * 5)


def test_unknown_label():
    X = np.random.default_rng(0).uniform(size=(4, 2))
    with pytest.raises(LabelVocabularyError):
        GiniROC(classes=[0, 1]).fit(X, [0, 1, 2, 0])


def test_score_reuses_fitted_weights():
    train = softmax_dataset(n=400, k=3, seed=3)
    test = softmax_dataset(n=400, k=3, seed=4)
    est = GiniROC().fit(train.scores, train.labels)
    aucs = [c.auc for c in evaluate(test).per_class]
    assert est.score(test.scores, test.labels) == pytest.approx(est.weights_ @ aucs, abs=1e-12)


def test_bootstrap_option():
    ds = perfect_dataset()
    est = GiniROC(n_bootstrap=10, grid_size=32).fit(ds.scores, ds.labels)
    assert est.band_.replicates == 10
    np.testing.assert_array_equal(est.band_.width, 0.0)


@pytest.mark.parametrize("params", [{"alignment": "rank"}, {"grid_size": 1}])
def test_invalid_params(params):
    ds = perfect_dataset()
    with pytest.raises(ValueError):
        GiniROC(**params).fit(ds.scores, ds.labels)


def test_function_form():
    ds = perfect_dataset()
    assert gini_roc_auc_score(ds.labels, ds.scores) == 1.0
