import numpy as np
import pytest

from dgflux.cli import main
from dgflux.models.traffic import TrafficModel
from dgflux.runner import read_snapshot_csv
from dgflux.scenario import Scenario

CONFIG = """\
name: cli-check
model:
  id: traffic
  n_classes: 3
mesh:
  length: 1000.0
  n_cells: 20
theta:
  kind: uniform
  value: [1.0, 0.5, 0.75, 1.0]
initial:
  kind: sine
  component: 0
  base: [0.1, 0.1, 0.1]
  amplitude: 0.05
  wavelength: 1000.0
boundary:
  left: periodic
  right: periodic
degree: 1
courant:
  courant: 0.3
t_end: 1.0
snapshots: [0.0, 1.0]
"""


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "loop.yaml"
    path.write_text(CONFIG)
    return path


def test_list_builtin(capsys):
    assert main(["list-builtin"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["4a", "4b", "5a", "5b", "elastic-layered"]


def test_run_yaml_config(config_path, tmp_path, capsys):
    out_dir = tmp_path / "results"
    assert main(["run", str(config_path), "--out", str(out_dir)]) == 0
    printed = capsys.readouterr().out
    assert "cli-check" in printed
    assert (out_dir / "manifest.json").exists()
    snap = read_snapshot_csv(out_dir / "snapshot_t1.csv")
    assert snap.columns == ("rho_1", "rho_2", "rho_3")
    assert snap.values.shape == (20, 3)
    assert (out_dir / "snapshot_t0.csv").exists()


def test_run_missing_config_is_io_error(capsys):
    assert main(["run", "nowhere/missing.yaml"]) == 3
    assert "i/o error" in capsys.readouterr().err


def test_run_malformed_yaml_is_config_error(tmp_path, capsys):
    path = tmp_path / "broken.yaml"
    path.write_text("{un closed")
    assert main(["run", str(path)]) == 1
    assert "config error" in capsys.readouterr().err


def test_run_unknown_key_is_config_error(tmp_path, capsys):
    path = tmp_path / "extra.yaml"
    path.write_text(CONFIG + "turbo: true\n")
    assert main(["run", str(path)]) == 1
    assert "turbo" in capsys.readouterr().err


def test_run_solver_failure_exit_code(config_path, monkeypatch, capsys):
    def poisoned(self, u, theta):
        return np.asarray(u, dtype=float) * np.nan

    monkeypatch.setattr(TrafficModel, "flux", poisoned)
    assert main(["run", str(config_path)]) == 2
    assert "solver failure" in capsys.readouterr().err


def test_analyze_snapshot(config_path, tmp_path, capsys):
    out_dir = tmp_path / "results"
    main(["run", str(config_path), "--out", str(out_dir)])
    capsys.readouterr()
    code = main(["analyze", str(out_dir / "snapshot_t1.csv"), "--x0", "500.0"])
    assert code == 0
    printed = capsys.readouterr().out
    assert "waves" in printed


def test_analyze_missing_file(capsys):
    assert main(["analyze", "gone.csv", "--x0", "1.0"]) == 3


def test_analyze_custom_thresholds(config_path, tmp_path, capsys):
    out_dir = tmp_path / "results"
    main(["run", str(config_path), "--out", str(out_dir)])
    capsys.readouterr()
    code = main([
        "analyze", str(out_dir / "snapshot_t1.csv"),
        "--x0", "500.0", "--plateau-tol", "0.5", "--fan-width", "30",
    ])
    assert code == 0
    assert "0 waves" in capsys.readouterr().out


def test_convergence_table(config_path, capsys):
    assert main(["convergence", str(config_path), "--meshes", "10,20"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "cells" in lines[0]
    assert len(lines) == 3


def test_convergence_rejects_bad_mesh_list(config_path, capsys):
    assert main(["convergence", str(config_path), "--meshes", "10;20"]) == 1
    assert main(["convergence", str(config_path), "--meshes", "10"]) == 1


def test_run_builtin_default_out(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    # shrink a builtin so the default-output path stays quick
    sc = Scenario.from_yaml((CONFIG))
    sc.save(tmp_path / "quick.yaml")
    assert main(["run", str(tmp_path / "quick.yaml")]) == 0
    assert (tmp_path / "runs" / "cli-check" / "manifest.json").exists()
