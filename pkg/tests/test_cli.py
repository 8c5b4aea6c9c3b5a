"""End-to-end CLI tests: flags, exit codes, file outputs, determinism."""

import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from gmclone.cli import (
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    main,
    parse_input_spec,
)
from gmclone.errors import UsageError


class TestInputSpec:
    def test_basis(self):
        q = parse_input_spec("basis:1")
        assert q.alpha == 0 and q.beta == 1

    def test_equatorial(self):
        q = parse_input_spec("equatorial:0.0")
        assert abs(q.alpha - 1 / math.sqrt(2)) < 1e-15
        assert abs(q.beta - 1 / math.sqrt(2)) < 1e-15

    def test_amps(self):
        q = parse_input_spec("amps:0.6,0,0.8,0")
        assert abs(q.alpha - 0.6) < 1e-15
        assert abs(q.beta - 0.8) < 1e-15

    @pytest.mark.parametrize(
        "spec",
        ["basis:2", "equatorial:abc", "amps:1,0", "ghz:0", "basis", "amps:0,0,0,0"],
    )
    def test_rejects_bad_specs(self, spec):
        with pytest.raises(UsageError):
            parse_input_spec(spec)


class TestPrepare:
    def test_writes_three_stages(self, tmp_path, capsys):
        code = main(["prepare", "--clones", "2", "--out", str(tmp_path)])
        assert code == EXIT_OK
        assert (tmp_path / "FullBitString").is_file()
        assert (tmp_path / "GMBitString").is_file()
        assert (tmp_path / "GMMatrix").is_file()
        out = capsys.readouterr().out
        assert "C0=3 C1=3" in out
        assert len((tmp_path / "GMMatrix").read_text().splitlines()) == 6

    def test_single_clone_has_two_records(self, tmp_path):
        main(["prepare", "--clones", "1", "--out", str(tmp_path)])
        assert len((tmp_path / "GMMatrix").read_text().splitlines()) == 2

    def test_resource_guard_exit_code(self, tmp_path, capsys):
        code = main(["prepare", "--clones", "99", "--out", str(tmp_path)])
        assert code == EXIT_RESOURCE
        assert "error" in capsys.readouterr().err


class TestCompile:
    def test_basis_report(self, tmp_path):
        code = main([
            "compile", "--clones", "2", "--input", "basis:0",
            "--tol", "1e-12", "--out", str(tmp_path),
        ])
        assert code == EXIT_OK
        report = json.loads((tmp_path / "compile_report.json").read_text())
        assert report["bond_dims"] == [1, 2, 2, 1]
        assert report["roundtrip_error"] < 1e-10
        assert report["source"] == "builder"
        assert (tmp_path / "mps.json").is_file()

    def test_single_clone_bond_dims(self, tmp_path):
        main([
            "compile", "--clones", "1", "--input", "equatorial:0.0",
            "--out", str(tmp_path),
        ])
        report = json.loads((tmp_path / "compile_report.json").read_text())
        assert report["bond_dims"] == [1, 1]

    def test_explicit_amplitude_input(self, tmp_path):
        code = main([
            "compile", "--clones", "2", "--input", "amps:0.6,0,0.8,0",
            "--out", str(tmp_path),
        ])
        assert code == EXIT_OK

    def test_uses_gm_matrix_stage_when_present(self, tmp_path):
        main(["prepare", "--clones", "2", "--out", str(tmp_path)])
        code = main([
            "compile", "--clones", "2", "--input", "basis:0",
            "--out", str(tmp_path),
        ])
        assert code == EXIT_OK
        report = json.loads((tmp_path / "compile_report.json").read_text())
        assert report["source"] == "gm_matrix"
        assert report["bond_dims"] == [1, 2, 2, 1]

    def test_stage_of_wrong_register_size_fails(self, tmp_path, capsys):
        main(["prepare", "--clones", "3", "--out", str(tmp_path)])
        code = main([
            "compile", "--clones", "2", "--input", "basis:0",
            "--out", str(tmp_path),
        ])
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_deterministic_outputs(self, tmp_path):
        dirs = [tmp_path / "a", tmp_path / "b"]
        for d in dirs:
            main(["prepare", "--clones", "3", "--out", str(d)])
            main([
                "compile", "--clones", "3", "--input", "basis:1", "--out", str(d),
            ])
        for name in ("FullBitString", "GMBitString", "GMMatrix",
                     "mps.json", "compile_report.json"):
            assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()


class TestAnalyze:
    def test_m2_basis_fidelities(self, capsys):
        code = main(["analyze", "--clones", "2", "--input", "basis:0"])
        assert code == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert len(report["clone_fidelities"]) == 2
        for f in report["clone_fidelities"]:
            assert abs(f - 5 / 6) < 1e-10
        assert report["nonlinearity_gap"] < 1e-12

    def test_single_clone_perfect_fidelity(self, capsys):
        main(["analyze", "--clones", "1", "--input", "equatorial:1.0"])
        report = json.loads(capsys.readouterr().out)
        assert len(report["clone_fidelities"]) == 1
        assert abs(report["clone_fidelities"][0] - 1.0) < 1e-12
        assert report["anticlone_fidelities"] == []

    def test_equatorial_gap_positive(self, capsys):
        main(["analyze", "--clones", "2", "--input", "equatorial:0.0"])
        report = json.loads(capsys.readouterr().out)
        assert report["nonlinearity_gap"] > 0.1

    def test_csv_format(self, capsys):
        main(["analyze", "--clones", "2", "--input", "basis:0", "--format", "csv"])
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "metric,value"
        assert lines[1].startswith("clone_fidelities,0.8333")


class TestSweep:
    def test_writes_csv(self, tmp_path, capsys):
        code = main(["sweep", "--clones", "3", "--out", str(tmp_path)])
        assert code == EXIT_OK
        lines = (tmp_path / "scaling.csv").read_text().splitlines()
        assert lines[0] == "M,num_qubits,bond_dim,cut_ranks,tol"
        assert len(lines) == 4

    def test_single_clone_row(self, tmp_path):
        main(["sweep", "--clones", "1", "--out", str(tmp_path)])
        lines = (tmp_path / "scaling.csv").read_text().splitlines()
        assert len(lines) == 2
        assert lines[1].startswith("1,1,1,")

    def test_resource_guard(self, tmp_path):
        assert main(["sweep", "--clones", "9", "--out", str(tmp_path)]) == EXIT_RESOURCE


class TestUsageErrors:
    def test_unknown_command(self):
        assert main(["frobnicate"]) == EXIT_USAGE

    def test_missing_clones(self):
        assert main(["prepare"]) == EXIT_USAGE

    def test_zero_clones(self, capsys):
        assert main(["prepare", "--clones", "0", "--out", "/tmp/x"]) == EXIT_USAGE
        assert "clones" in capsys.readouterr().err

    def test_bad_input_spec(self, capsys):
        code = main(["analyze", "--clones", "2", "--input", "nonsense:1"])
        assert code == EXIT_USAGE

    def test_bad_tol(self, tmp_path):
        code = main([
            "compile", "--clones", "2", "--tol", "1.5", "--out", str(tmp_path),
        ])
        assert code == EXIT_USAGE


def test_module_invocation_roundtrip(tmp_path):
    # exercise the installed entry path (python -m gmclone)
    src = str(Path(__file__).resolve().parents[1] / "src")
    result = subprocess.run(
        [sys.executable, "-m", "gmclone", "analyze", "--clones", "2",
         "--input", "basis:1"],
        capture_output=True,
        text=True,
        env={"PYTHONPATH": src, "PATH": "/usr/bin:/bin", "HOME": str(tmp_path)},
    )
    assert result.returncode == 0
    report = json.loads(result.stdout)
    assert abs(report["clone_fidelities"][0] - 5 / 6) < 1e-10
