import json

import pytest
from click.testing import CliRunner

from rangesets.cli import main
from rangesets.config import SessionConfig, save_config


@pytest.fixture(scope="module")
def wine_config_file(tmp_path_factory, wine_csv):
    path = tmp_path_factory.mktemp("cli") / "wine.yaml"
    save_config(SessionConfig(dataset=str(wine_csv), epsilon="auto"), path)
    return path


def test_compute_writes_document(tmp_path, wine_config_file):
    out = tmp_path / "doc.json"
    result = CliRunner().invoke(
        main, ["compute", "--config", str(wine_config_file), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    doc = json.loads(out.read_bytes())
    assert doc["schema_version"] == 1
    assert len(doc["rangesets"]) == 13


def test_export_svg_from_document(tmp_path, wine_config_file):
    runner = CliRunner()
    doc_path = tmp_path / "doc.json"
    svg_path = tmp_path / "alcohol.svg"
    assert runner.invoke(
        main, ["compute", "--config", str(wine_config_file), "--out", str(doc_path)]
    ).exit_code == 0
    result = runner.invoke(
        main,
        ["export-svg", "--doc", str(doc_path), "--attr", "alcohol", "--out", str(svg_path)],
    )
    assert result.exit_code == 0, result.output
    assert svg_path.read_bytes().startswith(b"<svg")


def test_suggest_eps(wine_config_file):
    result = CliRunner().invoke(main, ["suggest-eps", "--config", str(wine_config_file)])
    assert result.exit_code == 0, result.output
    assert 0.86 <= float(result.output.strip()) <= 1.06


def test_bench_small_sizes():
    result = CliRunner().invoke(main, ["bench", "--n", "200,400"])
    assert result.exit_code == 0, result.output
    assert "200" in result.output and "R^2" in result.output


def test_serve_command_registered():
    result = CliRunner().invoke(main, ["serve", "--help"])
    assert result.exit_code == 0
    assert "--port" in result.output
