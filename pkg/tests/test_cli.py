"""End-to-end exercises of the command-line entry point.

Each test invokes main() with real argv and checks exit codes, printed
output, and files on disk.  Exit code contract: 0 success, 2 bad
configuration, 3 solver failure mid-run.
"""

import pytest

from fastkin.cli import main


def _run_args(tmp_path, **over):
    base = {
        "--problem": "sod1d", "--scheme": "fks", "--cells": "48",
        "--nv": "31", "--tfinal": "0.01", "--out": str(tmp_path),
    }
    base.update(over)
    args = ["run"]
    for k, v in base.items():
        if v is not None:
            args += [k, v]
    return args


def test_list_problems_names_all_four(capsys):
    assert main(["list-problems"]) == 0
    out = capsys.readouterr().out
    for name in ("sod1d", "sod2d", "vortex2d", "implosion2d"):
        assert name in out


def test_run_writes_artifacts_and_reports(tmp_path, capsys):
    assert main(_run_args(tmp_path)) == 0
    out = capsys.readouterr().out
    assert "snapshot" in out
    assert "per_cycle" in out
    assert (tmp_path / "manifest.cfg").exists()
    assert (tmp_path / "timing.csv").exists()


def test_run_reads_config_file_and_flags_override(tmp_path, capsys):
    cfg = tmp_path / "case.cfg"
    cfg.write_text(
        "problem.name = sod1d\nsolver.scheme = fks\ngrid.cells = 48\n"
        "velocity.nodes = 31\ntime.final = 0.01\n"
        f"output.dir = {tmp_path / 'from_file'}\n"
    )
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "flag_wins")]) == 0
    assert (tmp_path / "flag_wins" / "manifest.cfg").exists()
    assert not (tmp_path / "from_file").exists()


def test_unknown_problem_exits_2(capsys):
    assert main(["run", "--problem", "sod1d", "--scheme", "fks", "--cells", "1,2"]) == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_config_key_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("problem.name = sod1d\nsolver.scheme = fks\nwhat.ever = 1\n")
    assert main(["run", "--config", str(cfg)]) == 2
    assert "what.ever" in capsys.readouterr().err


def test_solver_failure_exits_3(tmp_path, capsys):
    # a 7-node lattice on [-15,15] cannot resolve the sod Maxwellians; the
    # quadrature defect drives theta negative within the first few cycles
    args = _run_args(tmp_path, **{"--nv": "7"})
    assert main(args) == 3
    assert "solver failure" in capsys.readouterr().err


def test_converge_prints_rates_and_writes_table(tmp_path, capsys):
    assert (
        main(
            [
                "converge", "--problem", "vortex2d", "--scheme", "euler-muscl",
                "--meshes", "25,50", "--tfinal", "0.2", "--out", str(tmp_path),
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "mesh   25" in out and "mesh   50" in out
    assert (tmp_path / "convergence_euler-muscl.csv").exists()


def test_converge_rejects_problem_without_exact_solution(tmp_path, capsys):
    assert (
        main(["converge", "--problem", "sod1d", "--scheme", "fks", "--out", str(tmp_path)])
        == 2
    )


def test_bench_times_schemes_and_writes_ratio(tmp_path, capsys):
    assert (
        main(
            [
                "bench", "--problem", "sod2d", "--schemes", "fks,hofks",
                "--meshes", "20", "--nv", "16", "--tfinal", "0.005",
                "--out", str(tmp_path),
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "fks" in out and "hofks" in out
    assert (tmp_path / "bench.csv").exists()
    assert (tmp_path / "cost_ratio.csv").exists()
