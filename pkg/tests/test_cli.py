import csv
import io
import json
import subprocess
import sys

import pytest

from qmatspec import drinfeld_jimbo
from qmatspec.braiding import r_matrix_json
from qmatspec.cli import main, sample_points
from qmatspec.scalar import check_generic


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_table_counts_partitions(capsys):
    code, out = run(capsys, "table", "--N", "2", "--k-max", "2", "--n-max", "3")
    assert code == 0
    data = json.loads(out)
    assert [e["lambda"] for e in data["entries"]] == [[], [1], [2], [1, 1]]
    assert data["m"] == 2
    empty = data["entries"][0]
    assert empty["V"]["mu"] == ["q^-2", "1"]
    assert set(empty["V"]["p"]) == {"1", "2", "3"}


def test_table_csv(capsys):
    code, out = run(capsys, "table", "--k-max", "1", "--n-max", "2", "--output", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["lambda", "side", "quantity", "n", "value"]
    assert ["", "V", "mu", "1", "q^-2"] in rows
    assert {r[2] for r in rows[1:]} == {"mu", "p", "t", "a"}


def test_limit(capsys):
    code, out = run(capsys, "limit", "--N", "3", "--lambda", "2,1,0")
    assert code == 0
    assert json.loads(out)["mu_hat_limits"] == [4, 2, 0]
    _, out = run(capsys, "limit", "--N", "2")
    assert json.loads(out)["mu_hat_limits"] == [1, 0]
    _, out = run(capsys, "limit", "--N", "2", "--lambda", "1", "--n-max", "1")
    assert json.loads(out)["pp_power_sums"] == [1]
    code, out = run(capsys, "limit", "--N", "2", "--lambda", "1", "--output", "csv")
    assert code == 0 and out.startswith("i,mu_hat,mu_hat_limit,d_hat\n")


def test_usage_errors(capsys):
    assert main(["limit", "--N", "2", "--lambda", "1,1,1"]) == 2
    assert main(["limit", "--N", "2", "--lambda", "1,2"]) == 2
    assert main(["table", "--N", "0"]) == 2
    assert main(["verify", "--r-matrix", "/nonexistent/file.json"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--backend", "float"])
    assert exc.value.code == 2


def test_verify_passes_and_is_deterministic(capsys):
    code, first = run(capsys, "verify", "--k-max", "2", "--n-max", "2")
    assert code == 0
    report = json.loads(first)
    assert report and all(e["pass"] for e in report)
    _, second = run(capsys, "verify", "--k-max", "2", "--n-max", "2")
    assert first == second


def test_verify_cap_is_reported_as_skipped(capsys):
    code, out = run(capsys, "verify", "--k-max", "3", "--n-max", "2", "--cap", "8")
    assert code == 3
    report = json.loads(out)
    skipped = [e for e in report if e.get("skipped")]
    assert skipped and all(e["pass"] is None for e in skipped)
    assert not any(e["pass"] is False for e in report)


def test_verify_corrupted_r_matrix(tmp_path, capsys):
    data = json.loads(r_matrix_json(drinfeld_jimbo(2)))
    data["R"][0][0] = "q^-1"  # break the Hecke condition and the braid relation
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out = run(capsys, "verify", "--r-matrix", str(path), "--output", "csv")
    assert code == 1
    rows = {r[0]: r for r in csv.reader(io.StringIO(out))}
    assert rows["structure_braid"][2] == "fail"
    assert rows["structure_braid"][3]  # a rendered witness


def test_verify_custom_valid_r_matrix(tmp_path, capsys):
    path = tmp_path / "dj.json"
    path.write_text(r_matrix_json(drinfeld_jimbo(2)))
    code, _ = run(capsys, "verify", "--r-matrix", str(path), "--k-max", "1", "--n-max", "1")
    assert code == 0


def test_sampled_backend_labels_q(capsys):
    code, out = run(capsys, "verify", "--backend", "sampled", "--samples", "2", "--k-max", "1", "--n-max", "1")
    assert code == 0
    qs = {e["params"]["q"] for e in json.loads(out) if "q" in e["params"]}
    assert len(qs) == 2


def test_sample_points_are_seeded_and_generic():
    pts = sample_points(5, 7)
    assert pts == sample_points(5, 7)
    assert len(set(pts)) == 5
    for p in pts:
        assert p != 1
        check_generic(p)


def test_out_directory(tmp_path):
    assert main(["table", "--k-max", "1", "--n-max", "1", "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "table.json").read_text())["entries"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qmatspec.cli", "limit", "--N", "2", "--lambda", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["mu_hat_limits"] == [2, 0]
