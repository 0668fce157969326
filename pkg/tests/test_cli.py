import json

import pytest

from regenum.cli import (JobConfig, build_parser, main, parse_n_range,
                         parse_weights)
from regenum.errors import ConfigError

CUBIC_WEIGHTS = '[{"w":[3],"num":1,"den":1}]'


def test_parse_weights_round_trip():
    spec = parse_weights('[{"w":[2,1],"num":1,"den":2}]', colors=2, degree=3)
    assert spec.weights[(2, 1)].numerator == 1
    assert spec.weights[(2, 1)].denominator == 2


@pytest.mark.parametrize("text, message", [
    ("not json", "not valid JSON"),
    ("{}", "non-empty JSON list"),
    ("[]", "non-empty JSON list"),
    ('[{"w":[2],"num":1,"den":1}]', "!= degree"),
    ('[{"w":[3],"num":1,"den":0}]', "den = 0"),
    ('[{"w":[3],"num":1,"den":1},{"w":[3],"num":2,"den":1}]', "duplicate"),
    ('[{"w":[1,2],"num":1,"den":1}]', "list of 1"),
    ('[{"w":[3],"num":1}]', "exactly the keys"),
    ('[{"w":[3],"num":"1","den":1}]', "integers"),
])
def test_parse_weights_rejects(text, message):
    with pytest.raises(ConfigError, match=message):
        parse_weights(text, colors=1, degree=3)


def test_parse_n_range():
    assert parse_n_range("10:14:2") == [10, 12, 14]
    assert parse_n_range("3:5") == [3, 4, 5]
    for bad in ("10", "5:1", "1:5:0", "a:b", "1:2:3:4"):
        with pytest.raises(ConfigError):
            parse_n_range(bad)


def test_job_config_rejects_conflicts():
    with pytest.raises(ConfigError, match="not both"):
        JobConfig(command="exact", colors=1, degree=3, n=2,
                  n_range="1:3").check()
    with pytest.raises(ConfigError, match="required"):
        JobConfig(command="asym", degree=3).check()
    with pytest.raises(ConfigError, match="precision"):
        JobConfig(command="exact", colors=1, degree=3, precision_bits=40).check()


def test_exact_prints_bare_rational(capsys):
    status = main(["exact", "-c", "1", "-k", "3", "--weights", CUBIC_WEIGHTS,
                   "--n", "2"])
    assert status == 0
    assert capsys.readouterr().out.strip() == "5/24"


def test_colorings_exact_prints_bare_rational(capsys):
    status = main(["colorings", "-k", "3", "-c", "3", "--n", "2",
                   "--mode", "exact"])
    assert status == 0
    assert capsys.readouterr().out.strip() == "1/2"


def test_exact_range_prints_csv(capsys):
    status = main(["exact", "-c", "1", "-k", "3", "--weights", CUBIC_WEIGHTS,
                   "--n-range", "0:2"])
    assert status == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,num,den"
    assert lines[1:] == ["0,1,1", "1,0,1", "2,5,24"]


def test_crit_writes_pinned_schema(tmp_path, capsys):
    target = tmp_path / "crit.csv"
    status = main(["crit", "--family", "ek", "-k", "3", "-c", "4",
                   "--output", str(target)])
    assert status == 0
    lines = target.read_text().splitlines()
    assert lines[0] == ("x0,x1,x2,x3,tau_re,tau_im,g_re,g_im,"
                       "hessdet_re,hessdet_im,nondegenerate")
    assert len(lines) == 2
    assert lines[1].endswith("true")


def test_converge_writes_csv_json_figure(tmp_path, capsys):
    target = tmp_path / "table.csv"
    status = main(["converge", "-c", "1", "-k", "3", "--weights",
                   CUBIC_WEIGHTS, "--n-range", "10:14:2",
                   "--output", str(target), "--format", "json"])
    assert status == 0
    assert target.exists()
    assert (tmp_path / "table.json").exists()
    assert (tmp_path / "table.png").exists()
    header = target.read_text().splitlines()[0]
    assert header == "n,l,A_exact_log10,A_est_log10,ratio,abs_ratio_minus_1"
    document = json.loads((tmp_path / "table.json").read_text())
    assert document["metadata"]["tool"] == "regenum"
    assert document["metadata"]["config"]["n_range"] == "10:14:2"
    assert document["columns"][0] == "n"
    assert len(document["rows"]) == 3


def test_no_figure_flag(tmp_path, capsys):
    target = tmp_path / "table.csv"
    status = main(["converge", "-c", "1", "-k", "3", "--weights",
                   CUBIC_WEIGHTS, "--n-range", "10:12:2",
                   "--output", str(target), "--no-figure"])
    assert status == 0
    assert target.exists()
    assert not (tmp_path / "table.png").exists()


def test_repeat_runs_are_byte_identical(tmp_path, capsys):
    args = ["crit", "--family", "ek", "-k", "3", "-c", "3"]
    outputs = []
    for name in ("a.csv", "b.csv"):
        target = tmp_path / name
        assert main(args + ["--output", str(target)]) == 0
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1]


def test_config_file_overrides_flags(tmp_path, capsys):
    config = tmp_path / "job.json"
    config.write_text(json.dumps({
        "colors": 1, "degree": 3, "weights": CUBIC_WEIGHTS, "n": 2}))
    status = main(["exact", "-c", "9", "-k", "9", "--weights", "bogus",
                   "--config", str(config)])
    assert status == 0
    assert capsys.readouterr().out.strip() == "5/24"


def test_config_file_rejects_unknown_key(tmp_path, capsys):
    config = tmp_path / "job.json"
    config.write_text(json.dumps({"not_a_key": 1}))
    status = main(["exact", "-c", "1", "-k", "3", "--weights", CUBIC_WEIGHTS,
                   "--n", "2", "--config", str(config)])
    assert status == 2
    error = json.loads(capsys.readouterr().err)
    assert error["error"] == "ConfigError"
    assert "unknown config key" in error["message"]


def test_bad_weights_exit_code(capsys):
    status = main(["exact", "-c", "1", "-k", "3", "--weights",
                   '[{"w":[2],"num":1,"den":1}]', "--n", "2"])
    assert status == 2
    error = json.loads(capsys.readouterr().err)
    assert error["exit_code"] == 2


def test_cap_exit_code(capsys):
    status = main(["exact", "-c", "1", "-k", "3", "--weights", CUBIC_WEIGHTS,
                   "--n", "4", "--method", "brute-force"])
    assert status == 3
    error = json.loads(capsys.readouterr().err)
    assert error["error"] == "CapExceededError"


def test_degenerate_exit_code(capsys):
    # (x^2 + y^2)^2 is constant on the sphere: every direction critical
    weights = json.dumps([
        {"w": [4, 0], "num": 24, "den": 1},
        {"w": [2, 2], "num": 8, "den": 1},
        {"w": [0, 4], "num": 24, "den": 1}])
    status = main(["asym", "-c", "2", "-k", "4", "--weights", weights,
                   "--n", "4"])
    assert status == 5
    error = json.loads(capsys.readouterr().err)
    assert error["error"] == "DegenerateCriticalPointError"


def test_family_and_weights_conflict(capsys):
    parser = build_parser()
    with pytest.raises(SystemExit) as failure:
        parser.parse_args(["exact", "-c", "3", "-k", "3", "--family", "ek",
                           "--weights", CUBIC_WEIGHTS, "--n", "1"])
    assert failure.value.code == 2


def test_family_needs_enough_colors(capsys):
    status = main(["crit", "--family", "ek", "-k", "4", "-c", "3"])
    assert status == 2
    error = json.loads(capsys.readouterr().err)
    assert "degree <= colors" in error["message"]


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as finished:
        main(["--version"])
    assert finished.value.code == 0
