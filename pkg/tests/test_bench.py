import itertools

import pytest

from app.core.problems import HeatProblem

from app.services.bench import (
    BENCH_COLUMNS,
    TimerResolutionError,
    bench_single_chunk,
    bench_sweep,
    records_from_frame,
)
from app.services.propagators import numerical_propagator, probe_affine


def _ticking_timer(step: float):
    counter = itertools.count()
    return lambda: next(counter) * step


def test_self_comparison_ratio(reference_problem):
    propagator = numerical_propagator(reference_problem, 10)
    record = bench_single_chunk(reference_problem, 10, propagator, reps=3, timer=_ticking_timer(0.01))
    assert record.numerical_time_s == pytest.approx(0.01)
    assert record.propagator_time_s == pytest.approx(0.01)
    assert record.ratio == pytest.approx(1.0)
    assert record.mae == 0.0
    assert (record.grid_rows, record.grid_cols, record.steps, record.pred_step, record.reps) == (12, 12, 10, 10, 3)


def test_real_timer_self_comparison(reference_problem):
    record = bench_single_chunk(reference_problem, 10, numerical_propagator(reference_problem, 10), reps=3)
    assert record.ratio > 0
    assert record.mae == 0.0


def test_affine_error_is_small(reference_problem):
    record = bench_single_chunk(
        reference_problem, 10, probe_affine(reference_problem, 10), reps=3, steps=30, timer=_ticking_timer(0.01)
    )
    assert record.steps == 30
    assert record.mae < 1e-9


def test_timer_resolution(reference_problem):
    with pytest.raises(TimerResolutionError):
        bench_single_chunk(reference_problem, 10, numerical_propagator(reference_problem, 10), reps=3, timer=lambda: 1.0)


def test_invalid_arguments(reference_problem):
    propagator = numerical_propagator(reference_problem, 10)
    with pytest.raises(ValueError):
        bench_single_chunk(reference_problem, 10, propagator, reps=2)
    with pytest.raises(ValueError):
        bench_single_chunk(reference_problem, 10, propagator, reps=3, steps=15)
    with pytest.raises(ValueError):
        bench_single_chunk(reference_problem, 5, propagator, reps=3)


def test_sweep_frame(reference_problem):
    frame = bench_sweep(
        grid_sizes=[6, (8, 7)],
        steps_list=[5, 10],
        P=5,
        propagator_factory=lambda problem: numerical_propagator(problem, 5),
        problem_factory=lambda shape: HeatProblem(shape, reference_problem.boundary, 254.0, 0.27047),
        reps=3,
    )
    assert list(frame.columns) == BENCH_COLUMNS
    assert len(frame) == 4
    assert list(frame["steps"]) == [5, 10, 5, 10]
    assert list(frame["grid_cols"]) == [6, 6, 7, 7]
    records = records_from_frame(frame)
    assert records[-1].grid_rows == 8


def test_sweep_rejects_empty_lists(reference_problem):
    with pytest.raises(ValueError):
        bench_sweep([], [10], 10, lambda p: numerical_propagator(p, 10), lambda s: reference_problem)


def test_single_entry_sweep(reference_problem):
    frame = bench_sweep(
        [12], [10], 10, lambda p: probe_affine(p, 10), lambda shape: reference_problem, reps=3
    )
    assert frame.shape == (1, 9)
    row = frame.iloc[0]
    assert row["numerical_time_s"] > 0 and row["propagator_time_s"] > 0
    assert row["ratio"] == pytest.approx(row["numerical_time_s"] / row["propagator_time_s"])


@pytest.mark.slow
def test_numerical_time_grows_with_steps(reference_problem):
    frame = bench_sweep(
        [12], [100, 500, 1000, 2000], 10, lambda p: numerical_propagator(p, 10), lambda shape: reference_problem, reps=3
    )
    times = list(frame["numerical_time_s"])
    for shorter, longer in zip(times, times[1:]):
        assert longer >= 0.9 * shorter
