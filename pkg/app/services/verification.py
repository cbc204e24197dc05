"""
Набор проверок на эталонах для команды verify.

Каждая проверка — функция без аргументов, возвращающая строку с итогом
или бросающая AssertionError.
"""
import logging
import tempfile
import time
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from app.core.fields import BoundarySpec, Field
from app.core.problems import BurgersProblem, HeatProblem
from app.services.chunker import chunk_error_report, plan_chunks, recombine, run_chunks, seed_states
from app.services.datagen import GenConfig, generate_dataset, generate_probe_dataset
from app.services.dataset_io import read_dataset, write_dataset
from app.services.propagators import fit_ridge, numerical_propagator, probe_affine
from app.solvers.burgers import burgers_solve_1d, total_variation
from app.solvers.heat import (
    SchemeKind,
    StabilityWarning,
    adi_step_2d,
    crank_nicolson_step_1d,
    heat_advance,
    heat_solve_1d,
    heat_solve_2d,
    implicit_step_1d,
)
from app.solvers.laplace import dirichlet_mask, laplace_boundary_field, laplace_solve_2d
from app.solvers.oracles import (
    characteristic_burgers,
    dense_adi_step_2d,
    dense_crank_nicolson_step_1d,
    dense_implicit_step_1d,
    dense_tridiagonal,
)
from app.solvers.tridiagonal import TridiagonalSystem, thomas_solve
from app.utils.metrics import mae

logger = logging.getLogger(__name__)

# Эталонная задача для проверок
REFERENCE_BC = BoundarySpec(600.0, 500.0, 194.0, 248.0)
REFERENCE_IC = 254.0
REFERENCE_LAMBDA = 0.27047


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


def reference_problem(shape: tuple[int, int] = (12, 12)) -> HeatProblem:
    return HeatProblem(shape, REFERENCE_BC, REFERENCE_IC, REFERENCE_LAMBDA)


def check_thomas() -> str:
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(20):
        m = int(rng.integers(1, 51))
        lower, upper = rng.uniform(-1, 1, m), rng.uniform(-1, 1, m)
        diag = np.abs(lower) + np.abs(upper) + rng.uniform(0.5, 2.0, m)
        rhs = rng.normal(size=m)
        x = thomas_solve(TridiagonalSystem(lower, diag, upper, rhs))
        worst = max(worst, float(np.max(np.abs(dense_tridiagonal(lower, diag, upper) @ x - rhs))))
    assert worst < 1e-10, f"невязка {worst:.2e}"
    return f"невязка ≤ {worst:.1e}"


def check_schemes_1d() -> str:
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(20):
        m = int(rng.integers(1, 51))
        lam = float(rng.uniform(0.01, 2.0))
        values = rng.uniform(0, 100, m)
        a, b, c, d = rng.uniform(0, 100, 4)
        worst = max(
            worst,
            float(np.max(np.abs(implicit_step_1d(values, a, b, lam) - dense_implicit_step_1d(values, a, b, lam)))),
            float(np.max(np.abs(
                crank_nicolson_step_1d(values, a, b, c, d, lam)
                - dense_crank_nicolson_step_1d(values, a, b, c, d, lam)
            ))),
        )
    assert worst < 1e-10, f"расхождение {worst:.2e}"
    return f"неявная и КН совпадают с плотной сборкой ({worst:.1e})"


def check_adi_dense() -> str:
    problem = reference_problem((9, 7))
    rng = np.random.default_rng(3)
    field = Field(rng.uniform(0, 600, problem.shape))
    diff = float(np.max(np.abs(
        adi_step_2d(field, problem.boundary, problem.lam).values - dense_adi_step_2d(field, problem.boundary, problem.lam)
    )))
    assert diff < 1e-9, f"расхождение {diff:.2e}"
    return f"шаг ADI совпадает с плотной сборкой ({diff:.1e})"


def check_explicit_stability() -> str:
    m = 19
    ic = np.where(np.arange(m) % 2 == 0, 1.0, -1.0)
    boundary = BoundarySpec.uniform(0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StabilityWarning)
        unstable = heat_solve_1d(ic, boundary, 0.6, 200, SchemeKind.EXPLICIT)
    stable = heat_solve_1d(ic, boundary, 0.5, 200, SchemeKind.EXPLICIT)
    growth = float(np.max(np.abs(unstable[-1])) / np.max(np.abs(ic)))
    assert growth > 10, f"рост при λ=0.6 всего {growth:.1f}x"
    assert stable.max() <= 1.0 + 1e-9 and stable.min() >= -1.0 - 1e-9, "λ=0.5 нарушен принцип максимума"
    return f"λ=0.6 рост {growth:.1e}x, λ=0.5 в пределах"


def check_steady_state() -> str:
    problem = HeatProblem((24, 24), REFERENCE_BC, 0.0, 1.0)
    adi = heat_advance(problem.initial_field(), problem.boundary, problem.lam, 2000)
    laplace = laplace_solve_2d(laplace_boundary_field(problem.shape, problem.boundary), dirichlet_mask(problem.shape))
    assert laplace.converged, "Гаусс–Зейдель не сошёлся"
    diff = float(np.max(np.abs(adi.values - laplace.field.values)))
    assert diff < 1e-6, f"расхождение {diff:.2e}"
    return f"ADI → Лаплас ({diff:.1e}, {laplace.iterations} итераций)"


def check_chunk_identity() -> str:
    problem = reference_problem()
    L, P = 100, 10
    plan = plan_chunks(L, P)
    runs = run_chunks(plan, seed_states(problem, P), numerical_propagator(problem, P))
    chunked = recombine(runs)
    sequential = heat_solve_2d(problem, L)
    assert chunked == sequential, "траектории различаются"
    return f"L={L}, P={P}: побитовое совпадение"


def check_chunk_bookkeeping() -> str:
    rng = np.random.default_rng(4)
    for _ in range(50):
        L, P = int(rng.integers(0, 501)), int(rng.integers(1, 51))
        plan = plan_chunks(L, P)
        assert sorted(plan.indices()) == list(range(L + 1)), f"план ({L}, {P}) не разбивает 0..L"
        assert max(len(c) - 1 for c in plan.chunks if c) <= L // P, f"рекурсий больше ⌊L/P⌋ в ({L}, {P})"
    return "разбиение и границы рекурсий верны"


def check_affine() -> str:
    problem = reference_problem()
    P = 10
    affine = probe_affine(problem, P)
    numerical = numerical_propagator(problem, P)
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(20):
        start = problem.with_ic(Field(rng.uniform(0, 600, problem.shape))).initial_field()
        worst = max(worst, float(np.max(np.abs(affine.advance(start).values - numerical.advance(start).values))))
    assert worst < 1e-9, f"расхождение {worst:.2e}"
    return f"аффинный = числовой ({worst:.1e})"


def check_ridge() -> str:
    problem = HeatProblem((6, 6), REFERENCE_BC, REFERENCE_IC, REFERENCE_LAMBDA)
    dataset = generate_probe_dataset(problem, 10, samples=3 * problem.interior_size, seed=6)
    ridge = fit_ridge(dataset, reg=1e-10)
    errors = [mae(ridge.advance(s.input), s.target) for s in dataset.samples()]
    worst = max(errors)
    assert worst < 1e-5, f"MAE {worst:.2e}"
    return f"MAE ≤ {worst:.1e}"


def check_burgers() -> str:
    n = 256
    dx = 1.0 / n
    x = (np.arange(n) + 0.5) * dx
    t_end, steps = 0.1, 100

    def u0(points):
        return np.sin(np.pi * points)

    problem = BurgersProblem(Field(u0(x)), dt=t_end / steps, dx=dx)
    trajectory = burgers_solve_1d(problem, steps)
    tvs = [total_variation(state.values) for state in trajectory.states]
    assert all(b <= a + 1e-10 for a, b in zip(tvs, tvs[1:])), "полная вариация выросла"
    exact = characteristic_burgers(u0, x, t_end)
    diff = float(np.max(np.abs(trajectory.final.values[:, 0] - exact)))
    assert diff < 5e-2, f"отклонение от характеристик {diff:.2e}"

    constant = BurgersProblem(Field(np.full(16, 0.7)), dt=0.05, dx=0.1)
    assert burgers_solve_1d(constant, 10).final == constant.u0, "постоянное состояние изменилось"
    return f"характеристики {diff:.1e}, TV не растёт"


def check_dataset_determinism() -> str:
    config = GenConfig(grid_shape=(6, 6), pred_step=5, batches=2, batch_size=4, t_range=(0, 20), seed=7)
    with tempfile.TemporaryDirectory() as tmp:
        first, second = Path(tmp) / "a.dnt", Path(tmp) / "b.dnt"
        write_dataset(generate_dataset(config), first)
        write_dataset(generate_dataset(config), second)
        assert first.read_bytes() == second.read_bytes(), "файлы различаются"
        restored = read_dataset(first)
    assert restored.sample_count == 8
    return "два прогона с seed=7 побайтно равны"


def check_affine_chunk_error() -> str:
    problem = reference_problem()
    P, L = 10, 100
    runs = run_chunks(plan_chunks(L, P), seed_states(problem, P), probe_affine(problem, P))
    report = chunk_error_report(runs, heat_solve_2d(problem, L))
    assert report.full_mse < 1e-16, f"MSE {report.full_mse:.2e}"
    return f"MSE аффинного по чанкам {report.full_mse:.1e}"


CHECKS: list[tuple[str, Callable[[], str]]] = [
    ("thomas", check_thomas),
    ("schemes-1d", check_schemes_1d),
    ("adi-dense", check_adi_dense),
    ("explicit-stability", check_explicit_stability),
    ("steady-state", check_steady_state),
    ("chunk-identity", check_chunk_identity),
    ("chunk-bookkeeping", check_chunk_bookkeeping),
    ("affine-probe", check_affine),
    ("affine-chunks", check_affine_chunk_error),
    ("ridge", check_ridge),
    ("burgers", check_burgers),
    ("dataset-determinism", check_dataset_determinism),
]


def run_verification(names: list[str] | None = None) -> list[CheckResult]:
    """Прогнать проверки (все или выбранные по имени)."""
    selected = [(n, f) for n, f in CHECKS if names is None or n in names]
    results = []
    for name, check in selected:
        start = time.perf_counter()
        try:
            detail = check()
            passed = True
        except AssertionError as e:
            detail, passed = str(e), False
        except Exception as e:
            logger.error(f"Проверка {name} упала: {e}")
            detail, passed = f"{type(e).__name__}: {e}", False
        results.append(CheckResult(name, passed, detail, time.perf_counter() - start))
    return results
