import json

import pytest

from antitri.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_a_mu_lebesgue(capsys):
    code, out, _ = run(capsys, "build", "a_mu", "--measure", "lebesgue", "--n", "3")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 3
    assert data["rows"][3] == ["1/4", "1/4", "1/4", "1/4"]


def test_build_rtilde_csv(capsys):
    code, out, _ = run(capsys, "build", "rtilde", "--weights", "1,2/3,4/9", "--n", "2", "--format", "csv")
    assert code == 0
    assert out == "1,0,0\n1/2,1/2,0\n1/3,1/3,1/3\n"


def test_build_pi(capsys):
    code, out, _ = run(capsys, "build", "pi", "--lambda", "1,1/2,1/4")
    assert json.loads(out)["rows"] == [["1", "0", "0"], ["1/2", "1/2", "0"], ["1/4", "1/2", "1/4"]]


@pytest.mark.parametrize("kind, extra", [
    ("bernstein", ["--u", "1/3"]),
    ("b_sym", ["--u", "1/3"]),
    ("a_mu", ["--measure", "discrete:1/5@1/3,3/4@2/3"]),
    ("a_mu", ["--measure", "beta:2"]),
])
def test_build_round_trips_into_check(capsys, tmp_path, kind, extra):
    code, out, _ = run(capsys, "build", kind, "--n", "4", *extra)
    assert code == 0
    path = tmp_path / "m.json"
    path.write_text(out)
    code, out, _ = run(capsys, "check", "vp", "--matrix", str(path))
    assert code == 0 and json.loads(out)["verdict"] is True
    code, out, _ = run(capsys, "check", "weak", "--matrix", str(path))
    assert code == 0 and json.loads(out)["verdict"] is True


def test_rn_round_trip_as_upper_anti(capsys):
    _, built, _ = run(capsys, "build", "rn", "--weights", "1,1/2,1/4,1/8", "--n", "3")
    code, out, _ = run(capsys, "spectrum", "--matrix", built, "--form", "upper-anti")
    report = json.loads(out)
    assert code == 0 and report["all_real"] and report["below_minus_half"] == 0
    assert report["spectrum"] == ["1", "-1/2", "1/3", "-1/4"]


def test_check_weak_on_s(capsys):
    _, built, _ = run(capsys, "build", "a_mu", "--measure", "dirac:1/2", "--n", "4")
    code, out, _ = run(capsys, "check", "weak", "--matrix", built)
    report = json.loads(out)
    assert code == 0 and report["verdict"]
    assert report["spectrum"] == ["1", "-1/2", "1/4", "-1/8", "1/16"]


def test_check_lower_anti_form(capsys):
    code, out, _ = run(capsys, "check", "full", "--form", "lower-anti", "--matrix", '[[0, 1], ["1/2", "1/2"]]')
    assert code == 0 and json.loads(out)["verdict"] is True


def test_check_en(capsys):
    code, out, _ = run(capsys, "check", "en", "--lambda", "1,1/2,1/3")
    report = json.loads(out)
    assert code == 0 and report["verdict"] and all(r["nonzero"] for r in report["rows"])


def test_check_en_failure_is_still_a_verdict(capsys):
    code, out, _ = run(capsys, "check", "en", "--lambda", "1,1,1/3")
    assert code == 0 and json.loads(out)["first_failure"] == 2


def test_check_cm(capsys):
    code, out, _ = run(capsys, "check", "cm", "--lambda", "1,2,4")
    report = json.loads(out)
    assert code == 0 and report["verdict"] is False and report["violation"] == [0, 1]


def test_check_dcond(capsys):
    code, out, _ = run(capsys, "check", "dcond", "--lambda", "1,1/2,1/3,1/4")
    assert code == 0 and json.loads(out)["verdict"] is True


def test_classify_examples(capsys):
    code, out, _ = run(capsys, "classify", "--family", "poisson:1", "--depth", "8")
    report = json.loads(out)
    assert code == 0 and report["classification"]["family"] == "poisson"
    assert report["spectral"]["sup_value"] == "1/4" and report["horizon"] == 8
    code, out, _ = run(capsys, "classify", "--family", "geometric:1/2", "--depth", "8")
    report = json.loads(out)
    assert report["classification"]["family"] == "negative_binomial"
    assert report["spectral"]["sup_value"] == "1/3"


def test_classify_outside_exits_three_with_witness(capsys):
    code, out, _ = run(capsys, "classify", "--weights", "1,1,1,2")
    assert code == 3
    assert json.loads(out)["classification"]["witness"] == 3


def test_env_depth(capsys, monkeypatch):
    monkeypatch.setenv("ANTITRI_DEPTH", "3")
    _, out, _ = run(capsys, "build", "a_mu", "--measure", "lebesgue")
    assert json.loads(out)["n"] == 3


@pytest.mark.parametrize("argv", [
    ["check", "weak", "--matrix", "[[1, x"],
    ["build", "pi", "--lambda", "1,abc"],
    ["build", "a_mu", "--measure", "cauchy"],
    ["repro", "--depth", "0"],
    ["frobnicate"],
])
def test_parse_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


@pytest.mark.parametrize("argv", [
    ["check", "weak", "--matrix", "[[1, 2], [3, 4]]"],
    ["build", "rn", "--weights", "1,1", "--n", "3"],
    ["build", "bernstein", "--u", "3/2", "--n", "2"],
    ["classify", "--weights", "1,2,4,8"],
])
def test_precondition_errors_exit_three(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3 and err


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "classify", "--family", "negbin:2,1/2", "--depth", "6")[1] for _ in range(3)}
    assert len(outs) == 1


def test_repro_table(capsys):
    code, out, _ = run(capsys, "repro", "--depth", "4")
    assert code == 0
    assert out.splitlines()[-1].endswith("0 skip")


def test_repro_tampered_fixture(capsys, tmp_path):
    bad = {"T": [[1, 0, 0], ["1/2", "1/2", 0], ["1/3", "1/3", "1/4"]]}
    path = tmp_path / "fx.json"
    path.write_text(json.dumps(bad))
    code, _, err = run(capsys, "repro", "--depth", "3", "--fixtures", str(path))
    assert code == 1
    assert "tg-spectrum" in err
