import json

import pytest
from typer.testing import CliRunner

from app.cli import app

runner = CliRunner()


def test_build_json():
    result = runner.invoke(app, ["build", "--preset", "sl", "--args", "3", "--format", "json"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["dim"] == 8
    assert report["config"]["format"] == "json"


def test_build_from_shipped_preset_file():
    result = runner.invoke(app, ["build", "wk3", "--matrix", "1"])
    assert result.exit_code == 0, result.output
    assert "dim 18" in result.stdout


@pytest.mark.parametrize("argv", [
    ["build", "--preset", "nope"],
    ["build"],
    ["build", "--preset", "sl", "--args", "3", "--format", "xml"],
    ["grade", "--preset", "sl", "--args", "3", "--r", "1"],
    ["reproduce", "--table", "rank9"],
])
def test_input_errors_exit_with_2(argv):
    result = runner.invoke(app, argv)
    assert result.exit_code == 2


def test_grade_text():
    result = runner.invoke(app, ["grade", "--preset", "sl", "--args", "3", "--r", "1,0"])
    assert result.exit_code == 0, result.output
    assert "simplest" in result.stdout


def test_series_member():
    result = runner.invoke(app, ["series", "vect", "--N", "2", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["dim"] == 4


def test_series_formula():
    result = runner.invoke(app, ["series", "o_odd", "--param", "k=3", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["even"] == 21
    result = runner.invoke(app, ["series", "o_odd", "--param", "k=x"])
    assert result.exit_code == 2


def test_forms_extend():
    result = runner.invoke(app, ["forms", "--extend", "pe:4", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["sdim"] == "18|12"


def test_forms_from_file(tmp_path):
    path = tmp_path / "form.json"
    path.write_text(json.dumps({"n_ev": 4, "B_ev": "Pi"}), encoding="utf-8")
    result = runner.invoke(app, ["forms", str(path), "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["blocks"][0]["form_class"] == "Pi"


def test_prolong_text():
    result = runner.invoke(app, ["prolong", "--preset", "o_Pi", "--args", "3", "--r", "1", "--N", "2",
                                 "--no-constraints"])
    assert result.exit_code == 0, result.output
    assert "vect(1;N)" in result.stdout


def test_malformed_spec_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"marks": ["ev", "od"],\n "offdiag": [', encoding="utf-8")
    result = runner.invoke(app, ["build", str(path)])
    assert result.exit_code == 2
