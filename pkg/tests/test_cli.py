import sys
from pathlib import Path

import pytest

from app.config import Config, RuntimeConfig, StorageConfig, load_config
from app.handlers import cli_dispatch, setup_handlers
from app.services.dataset_io import read_dataset
from app.services.propagator_io import load_propagator
from app.services.propagators import AffinePropagator, RidgePropagator
from app.services.trajectory_io import read_trajectory


@pytest.fixture(autouse=True)
def handlers(tmp_path):
    setup_handlers(Config(runtime=RuntimeConfig(output_dir=tmp_path / "output"), storage=StorageConfig(None)), None)
    yield
    setup_handlers(Config(), None)


def test_unknown_flag_is_usage_error(capsys):
    assert cli_dispatch(["solve", "--bogus"]) == 1
    assert "--bogus" in capsys.readouterr().err


def test_missing_command_is_usage_error():
    assert cli_dispatch([]) == 1


@pytest.mark.parametrize("argv", [
    ["solve", "--grid", "2"],
    ["solve", "--bc", "1,2,3"],
    ["generate", "--batches", "0"],
    ["generate", "--bc-range", "5,1"],
    ["bench", "--grids", "a,b"],
])
def test_invalid_values_are_usage_errors(argv):
    assert cli_dispatch(argv) == 1


def test_help_exits_cleanly(capsys):
    assert cli_dispatch(["--help"]) == 0
    assert "chunk-run" in capsys.readouterr().out


def test_solve_writes_trajectory(tmp_path):
    out = tmp_path / "solve.bin"
    assert cli_dispatch(["solve", "--steps", "20", "--out", str(out)]) == 0
    trajectory = read_trajectory(out)
    assert trajectory.times == tuple(range(21))
    assert trajectory.shape == (12, 12)


def test_default_output_dir(tmp_path):
    assert cli_dispatch(["solve", "--steps", "2", "--format", "csv"]) == 0
    assert (tmp_path / "output" / "solve.csv").exists()


def test_chunk_run_matches_solve(tmp_path):
    solved, chunked = tmp_path / "solve.bin", tmp_path / "chunks.bin"
    assert cli_dispatch(["solve", "--steps", "100", "--out", str(solved)]) == 0
    assert cli_dispatch([
        "chunk-run", "--steps", "100", "--pred-step", "10", "--threads", "4", "--out", str(chunked),
    ]) == 0
    assert solved.read_bytes() == chunked.read_bytes()


def test_chunk_run_burgers_matches_solve(tmp_path):
    solved, chunked = tmp_path / "solve.bin", tmp_path / "chunks.bin"
    common = ["--equation", "burgers", "--grid", "64", "--steps", "30"]
    assert cli_dispatch(["solve", *common, "--out", str(solved)]) == 0
    assert cli_dispatch(["chunk-run", *common, "--pred-step", "3", "--out", str(chunked)]) == 0
    assert solved.read_bytes() == chunked.read_bytes()


def test_chunk_run_report(tmp_path, capsys):
    report = tmp_path / "report.csv"
    assert cli_dispatch([
        "chunk-run", "--steps", "40", "--pred-step", "4", "--propagator", "affine",
        "--out", str(tmp_path / "chunks.bin"), "--report", str(report),
    ]) == 0
    lines = report.read_text().splitlines()
    assert lines[0] == "chunk,states,mse,mae"
    assert lines[-1].startswith("full,41,")
    assert "📊" in capsys.readouterr().out


def test_generate_is_deterministic(tmp_path):
    first, second = tmp_path / "a.dnt", tmp_path / "b.dnt"
    argv = ["generate", "--grid", "6", "--pred-step", "3", "--batches", "2", "--batch-size", "4",
            "--t-range", "0,20", "--seed", "9"]
    assert cli_dispatch([*argv, "--out", str(first)]) == 0
    assert cli_dispatch([*argv, "--threads", "2", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert read_dataset(first).sample_count == 8


def test_affine_fit_and_chunk_run(tmp_path):
    affine, data, ridge = tmp_path / "affine.dnp", tmp_path / "data.dnt", tmp_path / "ridge.dnp"
    assert cli_dispatch(["probe", "--grid", "6", "--pred-step", "5", "--out", str(affine)]) == 0
    assert isinstance(load_propagator(affine), AffinePropagator)
    assert cli_dispatch([
        "generate", "--grid", "6", "--pred-step", "5", "--batches", "4", "--batch-size", "16",
        "--t-range", "0,50", "--out", str(data),
    ]) == 0
    assert cli_dispatch(["fit", "--data", str(data), "--reg", "1e-3", "--out", str(ridge)]) == 0
    assert isinstance(load_propagator(ridge), RidgePropagator)
    assert cli_dispatch([
        "chunk-run", "--grid", "6", "--steps", "20", "--pred-step", "5",
        "--propagator", str(affine), "--out", str(tmp_path / "chunks.bin"),
    ]) == 0


def test_missing_dataset_is_runtime_error(tmp_path):
    assert cli_dispatch(["fit", "--data", str(tmp_path / "missing.dnt")]) == 2


def test_steady(tmp_path):
    out = tmp_path / "steady.bin"
    assert cli_dispatch(["steady", "--grid", "8", "--out", str(out)]) == 0
    field = read_trajectory(out).final
    assert field.values[0, 3] == 600.0


def test_bench_writes_csv(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert cli_dispatch(["bench", "--grids", "6", "--steps", "10,20", "--reps", "3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "grid_rows,grid_cols,steps,pred_step,numerical_time_s,propagator_time_s,ratio,reps,mae"
    assert len(lines) == 3
    assert "⏱" in capsys.readouterr().out


def test_bench_grid_flag(tmp_path):
    out = tmp_path / "bench.csv"
    argv = ["bench", "--grid", "6", "--grid", "8,7", "--propagator", "numerical", "--reps", "3", "--out", str(out)]
    assert cli_dispatch(argv) == 0
    rows = [line.split(",")[:2] for line in out.read_text().splitlines()[1:]]
    assert rows == [["6", "6"], ["8", "7"]]


def test_bench_history_without_storage(capsys):
    assert cli_dispatch(["bench", "--history"]) == 0
    assert "отключено" in capsys.readouterr().out


def test_bench_saves_history(tmp_path, storage, capsys):
    setup_handlers(Config(runtime=RuntimeConfig(output_dir=tmp_path)), storage)
    assert cli_dispatch(["bench", "--grids", "6", "--reps", "3"]) == 0
    assert storage.get_record_count() == 1
    assert cli_dispatch(["bench", "--history"]) == 0
    assert "📚" in capsys.readouterr().out


def test_verify_selected_checks(capsys):
    assert cli_dispatch(["verify", "--only", "thomas,chunk-bookkeeping"]) == 0
    out = capsys.readouterr().out
    assert "🎉" in out
    assert out.count("✅") == 2


def test_verify_unknown_check():
    assert cli_dispatch(["verify", "--only", "nope"]) == 1


@pytest.fixture
def clean_env(monkeypatch):
    for key in ("PDE_THREADS", "PDE_BENCH_REPS", "PDE_OUTPUT_DIR", "LOG_LEVEL", "PDE_DB_PATH",
                "PDE_BC_RANGE", "PDE_LAMBDA_RANGE", "PDE_T_RANGE"):
        monkeypatch.delenv(key, raising=False)
    return monkeypatch


def test_config_defaults(clean_env):
    config = load_config()
    assert config.runtime.threads == 1
    assert config.runtime.bench_reps == 5
    assert config.runtime.output_dir == Path("output")
    assert config.gen.t_range == (0, 1000)
    assert config.storage.enabled


def test_config_from_env(clean_env):
    clean_env.setenv("PDE_THREADS", "4")
    clean_env.setenv("PDE_DB_PATH", "")
    clean_env.setenv("PDE_LAMBDA_RANGE", "0.1,0.4")
    clean_env.setenv("LOG_LEVEL", "debug")
    config = load_config()
    assert config.runtime.threads == 4
    assert not config.storage.enabled
    assert config.gen.lambda_range == (0.1, 0.4)
    assert config.runtime.log_level == "DEBUG"


@pytest.mark.parametrize("key, value", [
    ("PDE_BENCH_REPS", "2"),
    ("PDE_THREADS", "many"),
    ("LOG_LEVEL", "loud"),
    ("PDE_T_RANGE", "0.5,3"),
    ("PDE_BC_RANGE", "9,1"),
])
def test_config_rejects_bad_values(clean_env, key, value):
    clean_env.setenv(key, value)
    with pytest.raises(ValueError):
        load_config()


def test_main_with_in_memory_storage(clean_env, capsys):
    import main
    clean_env.setenv("PDE_DB_PATH", ":memory:")
    clean_env.setattr(sys, "argv", ["main.py", "bench", "--history"])
    assert main.main() == 0
    assert "пуста" in capsys.readouterr().out


def test_main_reports_bad_config(clean_env):
    import main
    clean_env.setenv("PDE_BENCH_REPS", "1")
    clean_env.setattr(sys, "argv", ["main.py", "verify"])
    assert main.main() == 1
