import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from roughbound.cli import main, parse_range, run_sweep


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_optimal_json(capsys):
    code, out, _ = run(capsys, "optimal", "--n", "4", "--m", "2", "--j", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["value"] == "28/1" and data["argopt"] == [{"parts": [3, 1], "multiplicity_form": "1^1 3^1"}]
    assert data["set_sense"] == "max" and data["set_value"] == "36/1"
    assert data["agreement"] is True and data["brute_force_complete"] is True


def test_optimal_set_level(capsys):
    code, out, _ = run(capsys, "optimal", "--n", "4", "--m", "2", "--j", "1", "--level", "set", "--sense", "max", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["value"] == "36/1" and data["integer_sense"] == "min"


def test_optimal_large_uses_closed_form(capsys):
    code, out, _ = run(capsys, "optimal", "--n", "60", "--m", "20", "--j", "1", "--format", "json", "--cap-partitions", "1000")
    data = json.loads(out)
    assert code == 0
    assert data["brute_force_complete"] is False and data["agreement"] is None
    assert data["closed_form"]["multiplicity_form"] == "1^10 5^10"


def test_optimal_j2_small_n_brute_force_only(capsys):
    code, out, _ = run(capsys, "optimal", "--n", "8", "--m", "3", "--j", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["closed_form"] is None and data["argopt"]


def test_optimal_fallbacks(capsys):
    code, out, _ = run(capsys, "optimal", "--n", "40", "--m", "10", "--j", "2", "--cap-partitions", "10")
    assert code == 0 and "brute force : skipped" in out
    code, _, err = run(capsys, "optimal", "--n", "12", "--m", "5", "--j", "2", "--cap-partitions", "1")
    assert code == 1 and "error" in err


def test_optimal_csv_and_text(capsys):
    code, out, _ = run(capsys, "optimal", "--n", "12", "--m", "3", "--j", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["value", "parts", "multiplicity_form"]
    assert ["4 4 4"] == [r[1] for r in rows[1:] if r[1] == "4 4 4"]
    code, out, _ = run(capsys, "optimal", "--n", "7", "--m", "3", "--j", "3", "--sense", "max")
    assert code == 0 and "agreement   : yes" in out and "set level (min boundary sum f_3)" in out


@pytest.mark.parametrize("argv", [["optimal", "--n", "3", "--m", "3", "--j", "1"], ["optimal", "--n", "5", "--m", "1", "--j", "1"]])
def test_optimal_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_expect(capsys):
    part = '{"n": 4, "blocks": [[1], [2, 3, 4]]}'
    code, out, _ = run(capsys, "expect", "--partition", part, "--j", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0
    (rep,) = data["reports"]
    assert rep["mu"] == "9/4" and rep["f_value"] == "36/1" and rep["lemma1_agrees"] is True
    code, out, _ = run(capsys, "expect", "--partition", part, "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["j", "f_value", "normalizer", "mu", "mu_decimal"] and len(rows) == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["expect"],
        ["expect", "--partition", "{not json"],
        ["expect", "--partition", '{"n": 3, "blocks": [[1, 2]]}'],
        ["expect", "--partition", '{"n": 2, "blocks": [[1], [2]]}', "--n", "3"],
        ["expect", "--partition", '{"n": 6, "blocks": [[1, 2, 3, 4, 5, 6]]}', "--cap-subsets", "4"],
    ],
)
def test_expect_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--n-range", "3..9", "--j", "1", "--j", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["fail"] == 0 and data["summary"]["pass"] == 2 * 2 * sum(n - 2 for n in range(3, 10))
    code, out, _ = run(capsys, "sweep", "--n-range", "10..12", "--j", "2")
    assert code == 0 and "skipped=" in out


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--n-range", "13", "--m-range", "4..5", "--j", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["n", "m", "j", "sense", "status", "closed_form", "value", "argopt", "structural_ok"]
    assert len(rows) == 5 and all(r[4] == "pass" for r in rows[1:])


def test_sweep_bad_rows(capsys):
    code, _, err = run(capsys, "sweep", "--n-range", "5", "--m-range", "5..6")
    assert code == 2 and "violates" in err
    code, _, err = run(capsys, "sweep")
    assert code == 2


def test_sweep_parallel_is_deterministic(monkeypatch):
    serial = run_sweep(range(5, 9), None, [1, 3], 10**7)
    monkeypatch.setenv("ROUGHBOUND_THREADS", "3")
    assert run_sweep(range(5, 9), None, [1, 3], 10**7) == serial


def test_parse_range():
    assert parse_range("2..5") == range(2, 6)
    assert parse_range("7") == range(7, 8)


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--format", "json")
    data = json.loads(out)
    assert len(data["table"]) == 9
    assert data["shape_j1"] == {"c": 3, "lin_equality": True}
    assert data["monotonicity_j2"] is True
    assert all(s["sign"] == s["expected"] for s in data["second_differences_j2"])
    assert all(t["ok"] for t in data["second_differences_j3"])
    # the only reference disagreement is the reference r(t) of g(2,3) > g(1,4)
    assert len(data["reference_mismatches"]) == 1 and "g(2,3) > g(1,4)" in data["reference_mismatches"][0]
    assert code == 1 and data["ok"] is False
    first = data["table"][0]
    assert (first["l"], first["integral"], first["min_n"]) == (4, "1639/360", 11)


def test_certify_text_and_errors(capsys):
    code, out, _ = run(capsys, "certify", "--n", "9")
    assert "single_crossing_up" in out and "MISMATCH" in out
    code, _, _ = run(capsys, "certify", "--n", "5")
    assert code == 2


def test_identities(capsys):
    code, out, _ = run(capsys, "identities", "--max-c", "10", "--max-n", "10", "--samples", "20", "--az-max-n", "6", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] is True
    assert all(Fraction(data[k]) == 0 for k in ("thu", "lemma_lower", "lemma_upper", "az_analogon", "az_identity"))


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "roughbound", "optimal", "--n", "30", "--m", "10", "--j", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and "1^5 5^5" in proc.stdout


def test_bad_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("ROUGHBOUND_THREADS", "many")
    code, _, err = run(capsys, "sweep", "--n-range", "4..5", "--j", "1")
    assert code == 2 and "ROUGHBOUND_THREADS" in err
