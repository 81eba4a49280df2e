import io
import json
import numpy as np
import pandas as pd
import pytest
from umbraq import cli
from umbraq.bin.errors import ConfigError, QParamError
from umbraq.utilities import utils


def test_parse_q_list():
    assert cli.parse_q_list("0.4, 0.6,0.9") == (0.4, 0.6, 0.9)
    assert cli.parse_q_list("") == ()
    with pytest.raises(QParamError):
        cli.parse_q_list("0.4,abc")
    with pytest.raises(QParamError):
        cli.parse_q_list("1.2")


def test_parse_range():
    assert cli.parse_range("0:6") == (0.0, 6.0)
    for bad in ("6:0", "1", "a:b"):
        with pytest.raises(ConfigError):
            cli.parse_range(bad)


def test_run_config_defaults():
    args = cli.build_parser().parse_args(["plot"])
    config = cli.RunConfig.from_args(args)
    assert config.q == (0.4, 0.6, 0.9)
    assert config.format == "csv"
    args = cli.build_parser().parse_args(["verify", "--q", "0.5", "--rel-tol", "1e-6"])
    config = cli.RunConfig.from_args(args)
    assert config.tolerance_override == 1e-6
    assert config.tolerance.rel_tol == 1e-12


def test_eval_q_gamma(capsys):
    assert cli.main(["eval", "q_gamma", "--q", "0.5", "--x", "3"]) == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "1.5"
    assert lines[1].startswith("error bound: ")


def test_eval_q_hermite(capsys):
    assert cli.main(["eval", "q_hermite", "--q", "0.5", "--n", "2"]) == cli.EXIT_OK
    assert capsys.readouterr().out.strip() == "x^2 + 1.5*y"


def test_eval_json(capsys):
    assert cli.main(["eval", "q_number", "--q", "0.5", "--x", "2", "--format", "json"]) == cli.EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["function"] == "q_number"
    assert payload["value"] == pytest.approx(1.5)
    assert payload["error_bound"] is None


def test_eval_q_exp_outside_gate(capsys):
    assert cli.main(["eval", "q_exp", "--q", "0.5", "--x", "5", "--rel-tol", "1e-10"]) == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    expected = cli.cmd_eval("q_exp", {"x": 5.0, "method": "product"}, 0.5)
    assert float(lines[0]) == pytest.approx(float(expected), rel=1e-8)
    assert lines[1].startswith("error bound: ")


def test_eval_hermite2(capsys):
    assert cli.main(["eval", "hermite2", "--n", "3", "--x", "1", "--y", "-1", "--q", "0.5"]) == cli.EXIT_OK
    assert capsys.readouterr().out.strip() == "-5"


def test_unknown_function(capsys):
    assert cli.main(["eval", "zeta", "--q", "0.5", "--x", "2"]) == cli.EXIT_CONFIG
    err = capsys.readouterr().err
    assert err.startswith("ERROR! - ")
    assert "q_gamma" in err


@pytest.mark.parametrize("argv", [
    ["eval", "q_gamma", "--q", "0.5"],
    ["eval", "q_gamma", "--q", "0.4,0.6", "--x", "1"],
    ["eval", "q_number", "--q", "1.5", "--x", "1"],
    ["verify", "--q", "1.5"],
    ["plot", "--q", "0.5", "--range", "3:1"],
    ["plot", "--q", "0.5", "--format", "svg"],
])
def test_configuration_errors_exit_with_two(argv, capsys):
    assert cli.main(argv) == cli.EXIT_CONFIG
    assert "ERROR!" in capsys.readouterr().err


def test_environment_error_exits_with_two(monkeypatch, capsys):
    monkeypatch.setenv("UMBRAQ_MAX_FACTORS", "lots")
    assert cli.main(["eval", "pi_q", "--q", "0.5"]) == cli.EXIT_CONFIG


def test_plot_csv(tmp_path):
    out = tmp_path / "fig1.csv"
    argv = ["plot", "--q", "0.4,0.6,0.9", "--range", "0:6", "--steps", "600", "--out", str(out)]
    assert cli.main(argv) == cli.EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 602
    assert lines[0] == "x,sin_q(q=0.4),cos_q(q=0.4),sin_q(q=0.6),cos_q(q=0.6),sin_q(q=0.9),cos_q(q=0.9)"
    assert lines[1].split(",")[:2] == ["0", "0"]
    assert all("e" not in field for line in lines[1:] for field in line.split(","))


def test_plot_to_stdout(capsys):
    assert cli.main(["plot", "--q", "0.5", "--range", "0:1", "--steps", "4"]) == cli.EXIT_OK
    table = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert list(table.columns) == ["x", "sin_q(q=0.5)", "cos_q(q=0.5)"]
    np.testing.assert_allclose(table["x"], [0.0, 0.25, 0.5, 0.75, 1.0])
    assert table["sin_q(q=0.5)"].iloc[2] == pytest.approx(1.0, rel=1e-11)


def test_parametric_csv():
    text = cli.cmd_plot_trig([0.9], (0.0, 2.0), 20, parametric=True)
    table = pd.read_csv(io.StringIO(text))
    assert list(table.columns) == ["x", "cos_q(q=0.9)", "sin_q(q=0.9)"]
    assert table.iloc[0].tolist() == pytest.approx([0.0, 1.0, 0.0])


def test_parametric_circle_near_classical_limit():
    text = cli.cmd_plot_trig([0.9999], (0.0, 1.0), 100, parametric=True)
    table = pd.read_csv(io.StringIO(text))
    radius = np.hypot(table["cos_q(q=0.9999)"], table["sin_q(q=0.9999)"])
    assert float(np.max(np.abs(radius - 1.0))) < 0.05


def test_svg_is_reproducible(tmp_path):
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"
    for path in (first, second):
        argv = ["plot", "--q", "0.9", "--parametric", "--format", "svg", "--steps", "50", "--out", str(path)]
        assert cli.main(argv) == cli.EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert first.read_bytes().startswith(b"<?xml")


def test_verify_report(tmp_path):
    out = tmp_path / "report.json"
    assert cli.main(["verify", "--q", "0.99", "--out", str(out)]) == cli.EXIT_OK
    text = out.read_text(encoding="utf-8")
    payload = json.loads(text)
    assert payload["suite_version"] == "1.0"
    assert payload["q"] == [0.99]
    assert payload["results"]
    assert utils.dumps_json(payload) == text


def test_verify_empty_grid(capsys):
    assert cli.main(["verify", "--q", ""]) == cli.EXIT_OK
    assert json.loads(capsys.readouterr().out)["results"] == []
