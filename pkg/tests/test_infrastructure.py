import json

import pytest

from polyharmonic import cli
from polyharmonic.reports import CheckReport, exit_code
from polyharmonic.suites import (Config, ConfigError, criterion_tasks, parse_point, parse_points, suite_tasks,
                                 write_sweeps_csv)


def rep(status="", computed=0.0, tol=1.0):
    r = CheckReport(name="x", inputs={"z": 1j}, computed=computed, reference=0.0, tolerance=tol)
    if status == "inconclusive":
        r.mark_inconclusive("noisy fit")
    elif status == "info":
        r.mark_info("diagnostic")
    return r


def test_report_verdict_and_round_trip():
    r = CheckReport(name="x", inputs={}, computed=[1 + 1e-9j, 2.0], reference=[1, 2], tolerance=1e-6)
    assert r.status == "pass"
    back = CheckReport.from_json(r.to_json())
    assert back.computed == r.computed and back.status == "pass"
    assert set(r.schema_dict()) >= {"name", "inputs", "value", "reference", "tolerance", "pass", "runtime_s"}


def test_nan_defect_fails():
    assert rep(computed=float("nan")).status == "fail"


def test_exit_codes():
    assert exit_code([rep(), rep("info", computed=5.0)]) == 0
    assert exit_code([rep(), rep("inconclusive")]) == 2
    assert exit_code([rep(computed=5.0), rep("inconclusive")]) == 1


def test_info_line_marks_tolerance():
    assert "[INFO outside tol]" in rep("info", computed=5.0).line()


def test_parse_points():
    assert parse_point("2i") == 2j and parse_point("i") == 1j
    assert parse_point("0.2,1.3") == complex(0.2, 1.3)
    assert abs(parse_point("rho") - complex(-0.5, 3 ** 0.5 / 2)) < 1e-15
    assert parse_points("i,2i") == [1j, 2j]
    assert parse_points("0.1,1.2;i") == [complex(0.1, 1.2), 1j]
    with pytest.raises(ConfigError):
        parse_point("nowhere")


def test_config_text_and_validation(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# comment\nprecision = 40\nniebur_C = 300  # cutoff\n")
    cfg = Config.from_file(p)
    assert cfg.precision == 40 and cfg.niebur_C == 300
    with pytest.raises(ConfigError):
        Config.from_text("bogus = 1")
    with pytest.raises(ConfigError):
        Config.from_text("precision = 5")
    with pytest.raises(ConfigError):
        Config.from_text("just a line")


def test_suite_tasks_cover_all_suites():
    assert len(suite_tasks("all")) == sum(len(suite_tasks(s)) for s in
                                          ("qseries", "specfun", "operators", "eisenstein", "green", "niebur",
                                           "rohrlich", "theorem12", "modes"))
    with pytest.raises(KeyError):
        suite_tasks("nope")


def test_criterion_two_drops_diagnostic_variants():
    kws = [t[2] for t in criterion_tasks(2)]
    assert not any(k.get("first_order") or k.get("log_rule") == "binomial" for k in kws)
    assert any(t[1] == "beta_derivative_relations_check" for t in criterion_tasks(2))


def test_sweeps_csv(tmp_path):
    n = write_sweeps_csv(tmp_path / "s.csv", {"a": [{"w": 1, "ratio": 0.5}], "b": [{"r": 0.1}]})
    lines = (tmp_path / "s.csv").read_text().splitlines()
    assert n == 2 and lines[0] == "series,w,ratio,r"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_cli_qseries(capsys):
    code, out = run_cli(capsys, "qseries", "j", "--N", "2")
    assert code == 0 and "q^1\t196884" in out.out


def test_cli_qseries_json(capsys):
    code, out = run_cli(capsys, "qseries", "delta", "--N", "3", "--json")
    assert json.loads(out.out)["coefficients"][1] == [2, "-24"]


def test_cli_eval_reports_error_estimate(capsys):
    code, out = run_cli(capsys, "--precision", "40", "eval", "j", "--z", "i", "--json")
    d = json.loads(out.out)
    assert code == 0 and abs(d["value"]["re"] - 1728) < 1e-9 and d["error_estimate"] < 1e-30


def test_cli_forms_alias(capsys):
    code, out = run_cli(capsys, "forms", "eval", "jj0", "--z", "0.2,1.3")
    assert code == 0 and out.out.startswith("jj0(")


def test_cli_specfun(capsys):
    code, out = run_cli(capsys, "specfun", "eval", "kloosterman", "1", "1", "5")
    assert code == 0 and float(out.out) == pytest.approx(0.381966011250105)


def test_cli_check_writes_report_and_report_reads_it(capsys, tmp_path):
    out_json = tmp_path / "r.json"
    code, _ = run_cli(capsys, "check", "rohrlich", "--out", str(out_json))
    assert code == 0
    code, out = run_cli(capsys, "report", str(out_json))
    assert code == 0 and "[PASS] rohrlich" in out.out


def test_cli_failing_suite_exits_one(capsys, tmp_path):
    code, out = run_cli(capsys, "check", "specfun", "--csv", str(tmp_path / "s.csv"))
    assert code == 1 and "[FAIL]" in out.out
    assert (tmp_path / "s.csv").read_text().startswith("series,")


def test_cli_inconclusive_exits_two(capsys, tmp_path):
    p = tmp_path / "r.json"
    p.write_text(json.dumps([rep("inconclusive").to_dict()]))
    code, _ = run_cli(capsys, "report", str(p))
    assert code == 2


def test_cli_coeff(capsys):
    code, out = run_cli(capsys, "coeff", "elliptic", "--f", "j1", "--zeta", "2i", "--m", "0..1")
    assert code == 0 and out.out.count("c(") == 2


def test_cli_bad_config(capsys, tmp_path):
    p = tmp_path / "bad.cfg"
    p.write_text("precision = 3\n")
    code, out = run_cli(capsys, "--config", str(p), "xi", "list")
    assert code == 1 and "configuration error" in out.err


def test_cli_divergent_pairing_is_an_error(capsys):
    code, out = run_cli(capsys, "check", "rohrlich", "--f", "j-1728")
    assert code == 1 and "DivergentModePair" in out.err
