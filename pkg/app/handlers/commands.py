"""
Обработчики подкоманд.
"""
import logging
from argparse import Namespace
from pathlib import Path

import numpy as np

from app.config import Config
from app.core.fields import BoundarySpec, Field
from app.core.problems import BurgersProblem, HeatProblem
from app.core.trajectory import Trajectory
from app.services.bench import bench_sweep, records_from_frame
from app.services.chunker import chunk_error_report, plan_chunks, recombine, report_frame, run_chunks, seed_states
from app.services.datagen import GenConfig, generate_dataset
from app.services.dataset_io import read_dataset, write_dataset
from app.services.propagator_io import load_propagator, save_propagator
from app.services.propagators import Propagator, fit_ridge, numerical_propagator, probe_affine
from app.services.storage import BenchStorage
from app.services.trajectory_io import export_trajectory
from app.services.verification import run_verification
from app.solvers.burgers import burgers_solve_1d
from app.solvers.heat import heat_solve_2d
from app.solvers.laplace import dirichlet_mask, laplace_boundary_field, laplace_solve_2d
from app.utils.formatting import format_bench_record, format_history, format_report, format_verification

logger = logging.getLogger(__name__)

# Будут установлены при инициализации
_config: Config | None = None
_storage: BenchStorage | None = None


def setup_handlers(config: Config, storage: BenchStorage | None):
    """Инициализировать зависимости обработчиков."""
    global _config, _storage
    _config = config
    _storage = storage


def _get_config() -> Config:
    return _config if _config is not None else Config()


def _output_path(args: Namespace, default_name: str) -> Path:
    """--out или файл в каталоге результатов; родительский каталог создаётся."""
    path = Path(args.out) if args.out else _get_config().runtime.output_dir / default_name
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _threads(args: Namespace) -> int:
    return args.threads if args.threads is not None else _get_config().runtime.threads


def heat_problem_from_args(args: Namespace, shape: tuple[int, int] | None = None) -> HeatProblem:
    return HeatProblem(shape or tuple(args.grid), BoundarySpec(*args.bc), args.ic, args.lam)


def burgers_problem_from_args(args: Namespace) -> BurgersProblem:
    """Синусоида на [0, 1], N ячеек, dt из числа Куранта."""
    cells = args.grid[0]
    dx = 1.0 / cells
    u0 = np.sin(np.pi * (np.arange(cells) + 0.5) * dx)
    return BurgersProblem(Field(u0), dt=args.cfl * dx / float(np.max(np.abs(u0))), dx=dx)


def _problem_from_args(args: Namespace) -> HeatProblem | BurgersProblem:
    if args.equation == "burgers":
        return burgers_problem_from_args(args)
    return heat_problem_from_args(args)


def cmd_solve(args: Namespace) -> int:
    problem = _problem_from_args(args)
    if isinstance(problem, BurgersProblem):
        trajectory = burgers_solve_1d(problem, args.steps)
    else:
        trajectory = heat_solve_2d(problem, args.steps)
    path = _output_path(args, f"solve.{args.format}")
    export_trajectory(trajectory, path, args.format)
    print(f"✅ {len(trajectory)} состояний → {path}")
    return 0


def cmd_steady(args: Namespace) -> int:
    shape = tuple(args.grid)
    boundary = BoundarySpec(*args.bc)
    result = laplace_solve_2d(
        laplace_boundary_field(shape, boundary), dirichlet_mask(shape), tol=args.tol, max_iters=args.max_iters
    )
    path = _output_path(args, f"steady.{args.format}")
    export_trajectory(Trajectory([(0, result.field)]), path, args.format)
    status = "✅ сошёлся" if result.converged else "⚠️ не сошёлся"
    print(f"{status} за {result.iterations} итераций (изменение {result.max_update:.2e}) → {path}")
    return 0


def cmd_generate(args: Namespace) -> int:
    defaults = _get_config().gen
    t_range = args.t_range or defaults.t_range
    config = GenConfig(
        grid_shape=tuple(args.grid),
        pred_step=args.pred_step,
        batches=args.batches,
        batch_size=args.batch_size,
        bc_ic_range=tuple(args.bc_range or defaults.bc_ic_range),
        lambda_range=tuple(args.lambda_range or defaults.lambda_range),
        t_range=(int(t_range[0]), int(t_range[1])),
        seed=args.seed,
    )
    dataset = generate_dataset(config, workers=_threads(args))
    path = _output_path(args, f"dataset_{args.seed}.dnt")
    write_dataset(dataset, path)
    print(f"✅ {dataset.sample_count} пар в {len(dataset.batches)} батчах → {path}")
    return 0


def cmd_probe(args: Namespace) -> int:
    propagator = probe_affine(heat_problem_from_args(args), args.pred_step)
    path = _output_path(args, "affine.dnp")
    save_propagator(propagator, path)
    print(f"✅ аффинный пропагатор d={propagator.offset.size}, P={propagator.pred_step} → {path}")
    return 0


def cmd_fit(args: Namespace) -> int:
    dataset = read_dataset(args.data)
    propagator = fit_ridge(dataset, args.reg, standardize=not args.no_standardize)
    path = _output_path(args, "ridge.dnp")
    save_propagator(propagator, path)
    print(f"✅ гребневый пропагатор по {dataset.sample_count} парам, reg={args.reg} → {path}")
    return 0


def _resolve_propagator(name: str, problem: HeatProblem | BurgersProblem, P: int) -> Propagator:
    if name == "numerical":
        return numerical_propagator(problem, P)
    if name == "affine":
        return probe_affine(problem, P)
    return load_propagator(name)


def cmd_chunk_run(args: Namespace) -> int:
    problem = _problem_from_args(args)
    P = args.pred_step
    propagator = _resolve_propagator(args.propagator, problem, P)
    runs = run_chunks(plan_chunks(args.steps, P), seed_states(problem, P), propagator, workers=_threads(args))
    trajectory = recombine(runs, args.steps)

    path = _output_path(args, f"chunks.{args.format}")
    export_trajectory(trajectory, path, args.format)
    print(f"✅ {len(runs)} чанков, {len(trajectory)} состояний → {path}")

    if args.report:
        if isinstance(problem, BurgersProblem):
            reference = burgers_solve_1d(problem, args.steps)
        else:
            reference = heat_solve_2d(problem, args.steps)
        report = chunk_error_report(runs, reference)
        report_path = Path(args.report)
        report_path.parent.mkdir(parents=True, exist_ok=True)
        report_frame(report).to_csv(report_path, index=False)
        logger.info(f"Отчёт об ошибке по чанкам: {report_path}")
        print(format_report(report))
    return 0


def cmd_bench(args: Namespace) -> int:
    if args.history:
        if _storage is None or not _storage.enabled:
            logger.warning("История бенчмарков запрошена, но PDE_DB_PATH пуст")
            print("📭 Сохранение бенчмарков отключено (PDE_DB_PATH пуст).")
            return 0
        print(format_history(_storage.get_records(limit=args.limit)))
        return 0

    P = args.pred_step
    reps = args.reps if args.reps is not None else _get_config().runtime.bench_reps
    steps_list = args.steps or [P]
    factory = numerical_propagator if args.propagator == "numerical" else probe_affine

    frame = bench_sweep(
        grid_sizes=args.grid_shapes or args.grids,
        steps_list=steps_list,
        P=P,
        propagator_factory=lambda problem: factory(problem, P),
        problem_factory=lambda shape: heat_problem_from_args(args, shape),
        reps=reps,
    )
    path = _output_path(args, "bench.csv")
    frame.to_csv(path, index=False)

    records = records_from_frame(frame)
    for record in records:
        print(format_bench_record(record))
    if _storage is not None and _storage.enabled:
        _storage.save_records(records, args.propagator)
    print(f"✅ {len(records)} строк → {path}")
    return 0


def cmd_verify(args: Namespace) -> int:
    results = run_verification(args.only)
    if not results:
        print("📭 Нет проверок с такими именами.")
        return 1
    print(format_verification(results))
    return 0 if all(r.passed for r in results) else 2
