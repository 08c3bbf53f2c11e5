import numpy as np
import pytest

from giniroc import EvaluationDataset, class_frequencies, load_dataset, to_indicator, write_dataset
from giniroc.exceptions import (
    CsvParseError,
    DataValidationError,
    InputSchemaError,
    LabelVocabularyError,
    ShapeError,
)


def write(tmp_path, text, name="scores.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_load_smallest_file(tmp_path):
    path = write(tmp_path, "label,score_A,score_B\nA,0.9,0.1\nB,0.2,0.8\nA,0.6,0.4\n")
    ds = load_dataset(path)
    assert ds.n_classes == 2
    assert ds.n_samples == 3
    assert ds.class_names == ["A", "B"]
    np.testing.assert_array_equal(ds.labels, [0, 1, 0])


def test_unknown_label_is_vocabulary_error(tmp_path):
    path = write(tmp_path, "label,score_A,score_B\nA,0.9,0.1\nC,0.2,0.8\n")
    with pytest.raises(LabelVocabularyError, match="'C'"):
        load_dataset(path)


def test_probability_rows_sum_to_one(tmp_path):
    rows = [
        ("x", 0.7, 0.2, 0.1), ("y", 0.1, 0.8, 0.1), ("z", 0.2, 0.2, 0.6),
        ("x", 0.5, 0.25, 0.25), ("y", 0.3, 0.4, 0.3), ("z", 0.05, 0.15, 0.8),
        ("x", 0.6, 0.3, 0.1), ("y", 0.2, 0.5, 0.3), ("z", 0.1, 0.1, 0.8),
        ("x", 0.4, 0.35, 0.25),
    ]
    text = "label,score_x,score_y,score_z\n" + "".join(
        f"{r[0]},{r[1]},{r[2]},{r[3]}\n" for r in rows
    )
    ds = load_dataset(write(tmp_path, text))
    assert (ds.n_classes, ds.n_samples) == (3, 10)
    expected = [sum(r[1:]) for r in rows]
    np.testing.assert_allclose(ds.scores.sum(axis=1), expected, atol=1e-9)
    np.testing.assert_allclose(ds.scores.sum(axis=1), 1.0, atol=1e-9)


def test_class_order_follows_score_columns(tmp_path):
    path = write(tmp_path, "score_b,label,score_a\n0.1,a,0.9\n0.7,b,0.3\n")
    ds = load_dataset(path)
    assert ds.class_names == ["b", "a"]
    np.testing.assert_array_equal(ds.labels, [1, 0])
    np.testing.assert_array_equal(ds.scores, [[0.1, 0.9], [0.7, 0.3]])


def test_explicit_score_columns_and_tab_delimiter(tmp_path):
    path = write(tmp_path, "truth\tp_cat\tp_dog\textra\np_cat\t0.9\t0.1\tz\np_dog\t0.4\t0.6\tz\n")
    ds = load_dataset(path, label_column="truth", score_columns=["p_cat", "p_dog"], delimiter="\t")
    assert ds.class_names == ["p_cat", "p_dog"]


def test_missing_label_column(tmp_path):
    path = write(tmp_path, "y,score_A,score_B\nA,0.9,0.1\nB,0.2,0.8\n")
    with pytest.raises(InputSchemaError, match="label column"):
        load_dataset(path)


def test_missing_explicit_score_column(tmp_path):
    path = write(tmp_path, "label,score_A,score_B\nA,0.9,0.1\nB,0.2,0.8\n")
    with pytest.raises(InputSchemaError):
        load_dataset(path, score_columns=["score_A", "score_C"])


def test_non_numeric_cell_reports_position(tmp_path):
    path = write(tmp_path, "label,score_A,score_B\nA,0.9,0.1\nB,high,0.8\n")
    with pytest.raises(CsvParseError) as info:
        load_dataset(path)
    assert info.value.row == 3
    assert info.value.column == "score_A"


@pytest.mark.parametrize("bad", ["nan", "inf", "-Infinity"])
def test_non_finite_is_validation_error(tmp_path, bad):
    path = write(tmp_path, f"label,score_A,score_B\nA,0.9,0.1\nB,{bad},0.8\n")
    with pytest.raises(DataValidationError):
        load_dataset(path)


def test_empty_field_rejected(tmp_path):
    path = write(tmp_path, "label,score_A,score_B,note\nA,0.9,0.1,ok\nB,0.2,0.8,\n")
    with pytest.raises(CsvParseError, match="empty field"):
        load_dataset(path)


def test_single_row_rejected(tmp_path):
    with pytest.raises(InputSchemaError):
        load_dataset(write(tmp_path, "label,score_A,score_B\nA,0.9,0.1\n"))


def test_empty_class_is_flagged(tmp_path):
    path = write(tmp_path, "label,score_A,score_B,score_C\nA,0.9,0.1,0\nB,0.2,0.8,0\n")
    ds = load_dataset(path)
    assert ds.empty_classes == [2]
    assert ds.has_empty_classes


def test_to_indicator_definition():
    ds = EvaluationDataset.from_arrays([0, 1, 0], [[0.9, 0.1], [0.3, 0.7], [0.6, 0.4]])
    np.testing.assert_array_equal(to_indicator(ds), [[1, 0], [0, 1], [1, 0]])


def test_indicator_means_are_frequencies():
    ds = EvaluationDataset.from_arrays([0, 0, 0, 1], np.eye(2)[[0, 0, 0, 1]])
    np.testing.assert_array_equal(to_indicator(ds).mean(axis=0), [0.75, 0.25])
    np.testing.assert_array_equal(class_frequencies(ds), [0.75, 0.25])


def test_frequencies_balanced():
    ds = EvaluationDataset.from_arrays([0, 1], [[0.5, 0.5], [0.2, 0.8]])
    np.testing.assert_array_equal(class_frequencies(ds), [0.5, 0.5])


def test_frequency_properties(random3):
    ind = to_indicator(random3)
    np.testing.assert_array_equal(ind.sum(axis=1), 1.0)
    freqs = class_frequencies(random3)
    assert abs(freqs.sum() - 1.0) <= 1e-12
    np.testing.assert_array_equal(freqs, ind.mean(axis=0))


def test_dataset_is_immutable(random3):
    with pytest.raises(ValueError):
        random3.scores[0, 0] = 5.0


@pytest.mark.parametrize(
    "labels, scores, error",
    [
        ([0, 2], [[0.1, 0.9], [0.5, 0.5]], DataValidationError),
        ([0, 1], [[0.1, np.nan], [0.5, 0.5]], DataValidationError),
        ([0, 1, 1], [[0.1, 0.9], [0.5, 0.5]], ShapeError),
        ([0], [[0.1, 0.9]], ShapeError),
    ],
)
def test_invariants_enforced(labels, scores, error):
    with pytest.raises(error):
        EvaluationDataset.from_arrays(labels, scores)


def test_round_trip_and_determinism(tmp_path, random3):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    write_dataset(random3, first)
    loaded = load_dataset(first)
    assert loaded == random3
    write_dataset(loaded, second)
    assert first.read_bytes() == second.read_bytes()
    again = load_dataset(second)
    np.testing.assert_array_equal(to_indicator(again), to_indicator(loaded))
