"""Tests for the command line interface and its exit codes."""

import json
import logging
import os
import sys

import pytest

from fanoverify import main as cli


def run(monkeypatch, *args):
    """Run `fanoverify args`; returns the exit code (0 when it returns)."""
    monkeypatch.setattr(sys, "argv", ["fanoverify"] + [str(a) for a in args])
    try:
        cli.main()
    except SystemExit as e:
        return e.code
    return 0


class TestHilbert:
    def test_complete_intersection(self, monkeypatch, capsys):
        code = run(monkeypatch, "hilbert", "--ci", "6", "--weights", "1,1,1,1,3", "--output-format", "json")
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        entry = out["hilbert"][0]
        assert entry["degree"] == "2"
        assert entry["genus"] == 2
        assert entry["series"][:2] == [1, 4]

    def test_ci_needs_weights(self, monkeypatch):
        assert run(monkeypatch, "hilbert", "--ci", "6") == 3

    def test_class(self, monkeypatch, capsys, quintic_dir):
        code = run(monkeypatch, "hilbert", "--dataset", quintic_dir, "--class", "1")
        assert code == 0
        assert "5/2" in capsys.readouterr().out


class TestLPC:
    def test_quotient_point(self, monkeypatch, capsys, data_dir):
        code = run(monkeypatch, "lpc", os.path.join(data_dir, "lpc_point.toml"))
        assert code == 0
        assert "1/5(2,3)" in capsys.readouterr().out

    def test_cone(self, monkeypatch, capsys, data_dir):
        code = run(monkeypatch, "lpc", os.path.join(data_dir, "lpc_cone.toml"))
        assert code == 1
        assert "not quasi-smooth" in capsys.readouterr().out

    def test_projective_point_needs_extension(self, monkeypatch, capsys, data_dir):
        code = run(monkeypatch, "lpc", os.path.join(data_dir, "lpc_chart.toml"))
        assert code == 0
        assert "1/2(1,1)" in capsys.readouterr().out

    def test_point_off_chart(self, monkeypatch, tmp_path):
        path = tmp_path / "off.toml"
        path.write_text(
            "characteristic = 11\n"
            "coordinates = [\"x\", \"y\", \"w\", \"z\"]\n"
            "weights = [1, 1, 1, 2]\n"
            "chart = \"z\"\n"
            "dimension = 2\n"
            "equations = [\"x*z - y^3 - w^3\"]\n"
            "[point]\n"
            "x = 1\n"
        )
        assert run(monkeypatch, "lpc", str(path)) == 3

    def test_missing_file(self, monkeypatch, tmp_path):
        assert run(monkeypatch, "lpc", str(tmp_path / "none.toml")) == 3


class TestDatasetCommands:
    def test_table_check(self, monkeypatch, capsys, quintic_dir):
        code = run(monkeypatch, "table-check", "--dataset", quintic_dir, "--all", "-q")
        assert code == 0
        assert "2 classes" in capsys.readouterr().out

    def test_selection_required(self, monkeypatch, quintic_dir):
        assert run(monkeypatch, "table-check", "--dataset", quintic_dir) == 3

    def test_verify_failure(self, monkeypatch, capsys, quintic_dir):
        code = run(
            monkeypatch,
            "verify",
            "--dataset",
            quintic_dir,
            "--class",
            "2",
            "--depth",
            "full",
            "--seeds",
            "1",
            "-q",
            "--output-format",
            "json",
        )
        assert code == 1
        out = json.loads(capsys.readouterr().out)
        claims = {c["name"]: c["verdict"] for c in out["reports"][0]["claims"]}
        assert claims == {"A": "fail", "B": "pass", "C": "fail"}

    def test_validate(self, monkeypatch, capsys, quintic_dir):
        assert run(monkeypatch, "validate", "--dataset", quintic_dir) == 0
        assert "Dataset valid" in capsys.readouterr().out

    def test_basket_from_findings(self, monkeypatch, capsys, quintic_dir):
        code = run(monkeypatch, "basket", "--dataset", quintic_dir, "--class", "1", "--class", "2")
        assert code == 0
        assert "No.1: pass" in capsys.readouterr().out

    def test_list_classes(self, monkeypatch, capsys, quintic_dir):
        code = run(monkeypatch, "list-classes", "--dataset", quintic_dir, "--output-format", "toml")
        assert code == 0
        assert "QuinticFail" in capsys.readouterr().out

    @pytest.mark.parametrize("fmt", ["text", "json"])
    def test_list_classes_formats(self, monkeypatch, capsys, quintic_dir, fmt):
        code = run(monkeypatch, "list-classes", "--dataset", quintic_dir, "--output-format", fmt)
        assert code == 0
        out = capsys.readouterr().out
        if fmt == "json":
            classes = json.loads(out)["classes"]
            assert [c["number"] for c in classes] == [1, 2]
            assert classes[1]["key"] == "QuinticFail"
        else:
            assert "No.1" in out and "No.2" in out

    def test_quiet_hides_status(self, monkeypatch, capsys, caplog, quintic_dir):
        caplog.set_level(logging.INFO)
        assert run(monkeypatch, "table-check", "--dataset", quintic_dir, "--all", "-q") == 0
        assert "Checking section tables" not in caplog.text

    def test_status_shown(self, monkeypatch, capsys, caplog, quintic_dir):
        caplog.set_level(logging.INFO)
        assert run(monkeypatch, "table-check", "--dataset", quintic_dir, "--all") == 0
        assert "Checking section tables" in caplog.text

    def test_output_is_reproducible(self, monkeypatch, capsys, quintic_dir):
        args = ("verify", "--dataset", quintic_dir, "--all", "--depth", "full", "--seeds", "1,2", "-q")
        outputs = []
        for _ in range(2):
            run(monkeypatch, *args, "--output-format", "json")
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]
        assert outputs[0]

    def test_bad_dataset(self, monkeypatch, tmp_path):
        assert run(monkeypatch, "list-classes", "--dataset", str(tmp_path)) == 3


class TestUsage:
    def test_missing_command(self, monkeypatch):
        assert run(monkeypatch) == 3

    def test_unknown_argument(self, monkeypatch, quintic_dir):
        assert run(monkeypatch, "validate", "--dataset", quintic_dir, "--frobnicate") == 3

    def test_bad_characteristic(self, monkeypatch, quintic_dir):
        with pytest.raises(SystemExit) as e:
            monkeypatch.setattr(
                sys, "argv", ["fanoverify", "verify", "--dataset", quintic_dir, "-p", "100"]
            )
            cli.main()
        assert e.value.code == 3
