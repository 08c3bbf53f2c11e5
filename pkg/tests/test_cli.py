import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import perfect_dataset, random_dataset
from giniroc import __version__, write_dataset
from giniroc.cli import main
from giniroc.datasets import bundled_path
from giniroc.report import read_report, validate_report

FIXTURE = str(bundled_path("synthetic_3class"))


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def without_timestamp(path):
    report = read_report(path)
    report["provenance"].pop("timestamp")
    return report


def test_evaluate_bundled_fixture(tmp_path, capsys):
    out_dir = tmp_path / "out"
    code, out, _ = run(["evaluate", "--input", FIXTURE, "--out-dir", str(out_dir)], capsys)
    assert code == 0
    report = read_report(out_dir / "report.json")
    validate_report(report)
    assert 0.0 <= report["auc_table"]["gini_auc"] <= 1.0
    assert report["provenance"]["seed"] == 42
    assert report["band"] is None
    for name in ("frequencies", "weights", "roc_aggregated", "roc_per_class"):
        assert (out_dir / f"{name}.svg").exists()
    curves = sorted(p.name for p in (out_dir / "curves").iterdir())
    assert curves == ["aggregated.csv", "class_00_alpha.csv", "class_01_beta.csv",
                      "class_02_gamma.csv", "micro.csv"]
    assert "Gini AUC" in out and "M-measure" in out


def test_no_plots(tmp_path, capsys):
    code, _, _ = run(["evaluate", "--input", FIXTURE, "--out-dir", str(tmp_path), "--no-plots"],
                     capsys)
    assert code == 0
    assert not list(tmp_path.glob("*.svg"))


def test_missing_label_column_exits_2(tmp_path, capsys):
    code, _, err = run(["evaluate", "--input", FIXTURE, "--label-col", "truth",
                        "--out-dir", str(tmp_path)], capsys)
    assert code == 2
    assert err.startswith("giniroc: dataset: error:") and "truth" in err


def test_numerical_failure_exits_1(tmp_path, capsys):
    path = tmp_path / "flat.csv"
    path.write_text("label,score_a,score_b\na,0.5,0.5\nb,0.5,0.5\na,0.5,0.5\n")
    code, _, err = run(["evaluate", "--input", str(path), "--out-dir", str(tmp_path)], capsys)
    assert code == 1
    assert "whitening" in err


def test_perfect_fixture_prints_ones(tmp_path, capsys):
    path = tmp_path / "perfect.csv"
    write_dataset(perfect_dataset(), path)
    code, out, _ = run(["evaluate", "--input", str(path), "--out-dir", str(tmp_path / "o")], capsys)
    assert code == 0
    rows = dict(line.rsplit(None, 1) for line in out.splitlines()[1:6])
    for metric in ("Gini AUC", "Macro AUC", "Micro AUC", "M-measure"):
        assert rows[metric].strip() == "1.0000"


def write_models(tmp_path):
    perfect = perfect_dataset(n=120)
    random = random_dataset(n=120, seed=1)
    rand_same_labels = perfect.with_scores(random.scores)
    paths = {}
    for name, ds in (("perfect", perfect), ("random", rand_same_labels)):
        paths[name] = tmp_path / f"{name}.csv"
        write_dataset(ds, paths[name])
    return paths


def read_comparison(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_compare_identical_files(tmp_path, capsys):
    paths = write_models(tmp_path)
    out_dir = tmp_path / "cmp"
    code, _, _ = run(["compare", "--input", str(paths["perfect"]), "--input", str(paths["perfect"]),
                      "--out-dir", str(out_dir), "--no-plots"], capsys)
    assert code == 0
    rows = read_comparison(out_dir / "comparison.csv")
    assert [r["model"] for r in rows] == ["perfect", "perfect_2"]
    assert {k: v for k, v in rows[0].items() if k != "model"} == {
        k: v for k, v in rows[1].items() if k != "model"
    }


def test_compare_perfect_ranks_first(tmp_path, capsys):
    paths = write_models(tmp_path)
    out_dir = tmp_path / "cmp"
    code, out, _ = run(["compare", "--input", str(paths["random"]), "--input",
                        str(paths["perfect"]), "--names", "rnd,best", "--out-dir", str(out_dir),
                        "--no-plots"], capsys)
    assert code == 0
    rows = read_comparison(out_dir / "comparison.csv")
    assert [r["model"] for r in rows] == ["rnd", "best"]
    for column in ("gini_auc", "macro_auc", "micro_auc", "m_measure"):
        assert float(rows[1][column]) > float(rows[0][column])
    assert (out_dir / "best" / "report.json").exists()
    assert out.splitlines()[1].startswith("rnd")


def test_compare_mismatched_classes(tmp_path, capsys):
    paths = write_models(tmp_path)
    other = tmp_path / "other.csv"
    other.write_text("label,score_x,score_y,score_z\nx,0.5,0.3,0.2\ny,0.1,0.8,0.1\n")
    code, _, err = run(["compare", "--input", str(paths["perfect"]), "--input", str(other),
                        "--out-dir", str(tmp_path / "c")], capsys)
    assert code == 2
    assert "classes" in err


def test_compare_needs_two_inputs(tmp_path, capsys):
    code, _, _ = run(["compare", "--input", FIXTURE, "--out-dir", str(tmp_path)], capsys)
    assert code == 2


def test_bootstrap_is_deterministic(tmp_path, capsys):
    out_dir = tmp_path / "boot"
    texts = []
    for _ in range(2):
        code, _, _ = run(["bootstrap", "--input", FIXTURE, "--replicates", "25", "--seed", "7",
                          "--out-dir", str(out_dir), "--grid-size", "64"], capsys)
        assert code == 0
        text = (out_dir / "report.json").read_text(encoding="utf-8")
        texts.append(text.replace(json.loads(text)["provenance"]["timestamp"], ""))
    assert texts[0] == texts[1]
    report = read_report(out_dir / "report.json")
    assert report["band"]["replicates"] == 25
    assert report["provenance"]["seed"] == 7


def test_bootstrap_perfect_has_zero_std_error(tmp_path, capsys):
    path = tmp_path / "perfect.csv"
    write_dataset(perfect_dataset(), path)
    code, _, _ = run(["bootstrap", "--input", str(path), "--replicates", "10",
                      "--out-dir", str(tmp_path / "o"), "--no-plots"], capsys)
    assert code == 0
    band = read_report(tmp_path / "o" / "report.json")["band"]
    assert band["auc_std_error"] == 0.0
    np.testing.assert_array_equal(band["lower"], band["upper"])


def test_too_few_replicates(tmp_path, capsys):
    code, _, err = run(["bootstrap", "--input", FIXTURE, "--replicates", "9",
                        "--out-dir", str(tmp_path)], capsys)
    assert code == 2
    assert "replicates" in err


def test_config_echo_reproduces_run(tmp_path, capsys):
    first = tmp_path / "first"
    code, _, _ = run(["bootstrap", "--input", FIXTURE, "--replicates", "12", "--seed", "3",
                      "--grid-size", "32", "--ridge", "1e-6", "--out-dir", str(first)], capsys)
    assert code == 0
    echoed = read_report(first / "report.json")["provenance"]["config"]
    assert echoed["ridge"] == 1e-6 and echoed["seed"] == 3 and echoed["plots"] is True
    second = tmp_path / "second"
    code, _, _ = run(["evaluate", "--config", str(first / "report.json"), "--out-dir", str(second)],
                     capsys)
    assert code == 0
    a, b = without_timestamp(first / "report.json"), without_timestamp(second / "report.json")
    b["provenance"]["config"]["out_dir"] = a["provenance"]["config"]["out_dir"]
    assert a == b


def test_json_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"inputs": [FIXTURE], "grid_size": 16, "plots": False,
                               "out_dir": str(tmp_path / "o")}))
    code, _, _ = run(["evaluate", "--config", str(cfg)], capsys)
    assert code == 0
    assert read_report(tmp_path / "o" / "report.json")["provenance"]["config"]["grid_size"] == 16
    cfg.write_text(json.dumps({"inputs": [FIXTURE], "colour": "red"}))
    assert run(["evaluate", "--config", str(cfg)], capsys)[0] == 2


def test_seed_recorded_without_bootstrap(tmp_path, capsys):
    run(["evaluate", "--input", FIXTURE, "--seed", "99", "--out-dir", str(tmp_path)], capsys)
    report = read_report(tmp_path / "report.json")
    assert report["provenance"]["seed"] == 99
    assert report["provenance"]["config"]["replicates"] == 1000


def test_bad_flag_values(tmp_path, capsys):
    assert run(["evaluate", "--input", FIXTURE, "--grid-size", "1",
                "--out-dir", str(tmp_path)], capsys)[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["evaluate", "--input", FIXTURE, "--alignment", "rank"])
    assert info.value.code == 2


def test_version(capsys):
    code, out, _ = run(["version"], capsys)
    assert code == 0 and out.strip() == f"giniroc {__version__}"


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "giniroc", "version"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and __version__ in proc.stdout
