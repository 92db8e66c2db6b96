import csv
import io
import json

import pytest

from erasure_repair.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_point(capsys):
    code, out, _ = run(capsys, "point", "--M", "10", "--d", "7")
    assert code == 0
    r = {row["family"]: row for row in rows(out)}
    assert r["MBR"]["beta_exact"] == "2/5"
    assert out.endswith("\n") and "\r" not in out


def test_tradeoff_series(capsys):
    code, out, _ = run(capsys, "tradeoff", "--eps", "0", "--eps", "0.1", "--grid", "20")
    assert code == 0
    data = rows(out)
    assert {r["eps_exact"] for r in data} == {"0", "1/10"}
    assert any(r["alpha_star"] == "INFEASIBLE" for r in data)
    assert data[0].keys() >= {"gamma", "gamma_exact", "alpha_star", "alpha_star_exact", "status"}


def test_tradeoff_above_msr_is_constant(capsys):
    code, out, _ = run(capsys, "tradeoff", "--eps", "0.1", "--gamma-min", "1", "--gamma-max", "2",
                       "--grid", "5")
    assert code == 0
    assert {r["alpha_star_exact"] for r in rows(out)} == {"1/5"}


def test_tradeoff_bad_range(capsys):
    code, _, err = run(capsys, "tradeoff", "--gamma-min", "2", "--gamma-max", "1")
    assert code == 1 and "empty range" in err


def test_psucc_and_rep(capsys):
    code, out, _ = run(capsys, "psucc", "--d", "7", "--d-prime", "9", "--eps", "0.1")
    assert code == 0 and rows(out)[0]["p_success"] == "0.947027862"
    code, out, _ = run(capsys, "psucc-rep", "--counts", "2,1,1", "--eps", "0.1")
    assert code == 0 and rows(out)[0]["p_success"] == "0.8019"


def test_psucc_2layer_json(capsys):
    code, out, _ = run(capsys, "psucc-2layer", "--M", "4", "--n", "4", "--k", "2", "--d", "3",
                       "--alpha1", "2", "--alpha2", "1", "--beta1", "1", "--beta2", "1",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["series"][0]["p_success"] == pytest.approx(0.999945)
    assert doc["meta"]["version"] and "seed" in doc["meta"]


def test_opt_helpers_sweep(capsys):
    code, out, _ = run(capsys, "opt-helpers", "--gamma-th", "5")
    data = rows(out)
    assert code == 0 and len(data) == 25
    assert (data[4]["d"], data[4]["d_prime"]) == ("6", "9")


def test_opt_helpers_infeasible_exit(capsys):
    code, out, _ = run(capsys, "opt-helpers", "--gamma-th", "1", "--eps", "0.1")
    assert code == 2 and rows(out)[0]["status"] == "INFEASIBLE"


def test_opt_storage(capsys):
    code, out, _ = run(capsys, "opt-storage", "--M", "4", "--n", "4", "--k", "2", "--d", "3",
                       "--alpha-th", "3", "--gamma-th", "6", "--format", "json")
    res = json.loads(out)["result"]
    assert code == 0
    assert (res["alpha1_exact"], res["alpha2_exact"], res["beta2_exact"]) == ("2", "1", "1")
    code, _, _ = run(capsys, "opt-storage", "--d", "9", "--alpha-th", "0.1", "--gamma-th", "6")
    assert code == 2


def test_region_map(capsys):
    code, out, _ = run(capsys, "region-map", "--cells", "2", "--grid", "8")
    assert code == 0
    data = rows(out)
    assert len(data) == 4 and {r["tag"] for r in data} <= {"MSR", "MBR", "TIE", "INFEASIBLE"}


def test_simulate_is_byte_identical(capsys, tmp_path):
    args = ["simulate", "--M", "4", "--n", "4", "--k", "2", "--d", "3", "--alpha1", "2",
            "--alpha2", "1", "--beta1", "1", "--beta2", "1", "--trials", "500", "--seed", "9"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert rows(a.read_text())[0]["trials"] == "500"


def test_simulate_helper_scheme(capsys):
    code, out, _ = run(capsys, "simulate", "--d", "5", "--d-prime", "6", "--M", "10",
                       "--trials", "300", "--format", "json")
    res = json.loads(out)["result"]
    assert code == 0 and res["p_analytic"] == pytest.approx(0.885735)


@pytest.mark.parametrize("argv", [["bogus"], ["point", "--k", "20", "--d", "9"], ["psucc", "--d", "3"],
                                  ["psucc", "--d", "3", "--d-prime", "4", "--eps", "1"],
                                  ["tradeoff", "--grid", "1"], ["point"]])
def test_usage_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 1


def test_validate_quick_reports_failure_code(capsys):
    code, out, err = run(capsys, "validate", "--quick")
    data = rows(out)
    assert {r["status"] for r in data} <= {"PASS", "FAIL"}
    assert any("0.8019" in r["expected"] for r in data)
    assert code == (3 if any(r["status"] == "FAIL" for r in data) else 0)
