"""
Разбор командной строки и диспетчеризация подкоманд.
"""
import argparse
import logging
import sys

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

# Эталонная задача по умолчанию
DEFAULT_BC = (600.0, 500.0, 194.0, 248.0)
DEFAULT_IC = 254.0
DEFAULT_LAMBDA = 0.27047


class UsageError(Exception):
    """Неверные аргументы командной строки."""


class CliParser(argparse.ArgumentParser):
    """ArgumentParser, который бросает UsageError вместо выхода с кодом 2."""

    def error(self, message: str):
        raise UsageError(f"{self.format_usage()}{self.prog}: ошибка: {message}")


def parse_grid(value: str) -> tuple[int, int]:
    """'N' → (N, N), 'N,M' → (N, M)."""
    try:
        parts = [int(p) for p in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"сетка должна быть 'N' или 'N,M', получено '{value}'") from None
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2 or min(parts) < 3:
        raise argparse.ArgumentTypeError(f"сетка должна быть 'N' или 'N,M' с N, M ≥ 3, получено '{value}'")
    return parts[0], parts[1]


def parse_bc(value: str) -> tuple[float, float, float, float]:
    try:
        parts = tuple(float(p) for p in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидается 'a,b,c,d', получено '{value}'") from None
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"нужно ровно 4 граничных значения, получено {len(parts)}")
    return parts


def parse_range(value: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидается 'lo,hi', получено '{value}'") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"нижняя граница больше верхней: '{value}'")
    return lo, hi


def parse_int_list(value: str) -> list[int]:
    try:
        items = [int(p) for p in value.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидается список целых через запятую, получено '{value}'") from None
    if not items:
        raise argparse.ArgumentTypeError("пустой список")
    return items


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидается целое число, получено '{value}'") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"значение должно быть не меньше 1, получено {number}")
    return number


def non_negative_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидается целое число, получено '{value}'") from None
    if number < 0:
        raise argparse.ArgumentTypeError(f"значение должно быть неотрицательным, получено {number}")
    return number


def _problem_options(parser: argparse.ArgumentParser, steps: bool = True):
    parser.add_argument("--grid", type=parse_grid, default=(12, 12), help="размер сетки N или N,M")
    parser.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA, help="λ = kΔt/Δx²")
    parser.add_argument("--bc", type=parse_bc, default=DEFAULT_BC, help="края: верх,низ,лево,право")
    parser.add_argument("--ic", type=float, default=DEFAULT_IC, help="начальная температура")
    if steps:
        parser.add_argument("--steps", type=non_negative_int, default=100, help="число шагов L")


def _output_options(parser: argparse.ArgumentParser, formats: bool = True):
    parser.add_argument("--out", default=None, help="путь результата")
    if formats:
        parser.add_argument("--format", choices=("bin", "csv"), default="bin")


def build_parser() -> CliParser:
    from app.handlers import commands

    parser = CliParser(prog="pde", description="Конечно-разностные решатели и ускорение по чанкам")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("solve", help="траектория теплопроводности или Бюргерса")
    _problem_options(p)
    p.add_argument("--equation", choices=("heat", "burgers"), default="heat")
    p.add_argument("--cfl", type=float, default=0.5, help="число Куранта для Бюргерса")
    _output_options(p)
    p.set_defaults(handler=commands.cmd_solve)

    p = sub.add_parser("steady", help="стационарное поле (уравнение Лапласа)")
    p.add_argument("--grid", type=parse_grid, default=(12, 12))
    p.add_argument("--bc", type=parse_bc, default=DEFAULT_BC)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iters", type=positive_int, default=100_000)
    _output_options(p)
    p.set_defaults(handler=commands.cmd_steady)

    p = sub.add_parser("generate", help="сгенерировать датасет пар")
    p.add_argument("--grid", type=parse_grid, default=(12, 12))
    p.add_argument("--pred-step", type=positive_int, default=10)
    p.add_argument("--batches", type=positive_int, default=1)
    p.add_argument("--batch-size", type=positive_int, default=32)
    p.add_argument("--bc-range", type=parse_range, default=None)
    p.add_argument("--lambda-range", type=parse_range, default=None)
    p.add_argument("--t-range", type=parse_range, default=None)
    p.add_argument("--seed", type=non_negative_int, default=0)
    p.add_argument("--threads", type=positive_int, default=None)
    _output_options(p, formats=False)
    p.set_defaults(handler=commands.cmd_generate)

    p = sub.add_parser("probe", help="построить аффинный пропагатор пробами")
    _problem_options(p, steps=False)
    p.add_argument("--pred-step", type=positive_int, default=10)
    _output_options(p, formats=False)
    p.set_defaults(handler=commands.cmd_probe)

    p = sub.add_parser("fit", help="обучить гребневый пропагатор на датасете")
    p.add_argument("--data", required=True, help="файл датасета")
    p.add_argument("--reg", type=float, default=1e-6)
    p.add_argument("--no-standardize", action="store_true")
    _output_options(p, formats=False)
    p.set_defaults(handler=commands.cmd_fit)

    p = sub.add_parser("chunk-run", help="прогон по чанкам и сборка траектории")
    _problem_options(p)
    p.add_argument("--equation", choices=("heat", "burgers"), default="heat")
    p.add_argument("--cfl", type=float, default=0.5)
    p.add_argument("--pred-step", type=positive_int, default=10)
    p.add_argument("--propagator", default="numerical", help="numerical, affine или путь к файлу пропагатора")
    p.add_argument("--threads", type=positive_int, default=None)
    p.add_argument("--report", default=None, help="CSV отчёта об ошибке против последовательного решения")
    _output_options(p)
    p.set_defaults(handler=commands.cmd_chunk_run)

    p = sub.add_parser("bench", help="замеры скорости")
    p.add_argument("--grid", dest="grid_shapes", type=parse_grid, action="append", default=None,
                   help="сетка N или N,M, можно повторять")
    p.add_argument("--grids", type=parse_int_list, default=[12], help="список квадратных сеток N1,N2,...")
    p.add_argument("--steps", type=parse_int_list, default=None, help="шаги (кратны P), по умолчанию P")
    p.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA)
    p.add_argument("--bc", type=parse_bc, default=DEFAULT_BC)
    p.add_argument("--ic", type=float, default=DEFAULT_IC)
    p.add_argument("--pred-step", type=positive_int, default=10)
    p.add_argument("--propagator", choices=("numerical", "affine"), default="affine")
    p.add_argument("--reps", type=positive_int, default=None)
    p.add_argument("--history", action="store_true", help="показать сохранённые замеры")
    p.add_argument("--limit", type=positive_int, default=20)
    _output_options(p, formats=False)
    p.set_defaults(handler=commands.cmd_bench)

    p = sub.add_parser("verify", help="прогнать проверки на эталонах")
    p.add_argument("--only", type=lambda v: [s for s in v.split(",") if s], default=None)
    p.set_defaults(handler=commands.cmd_verify)

    return parser


def cli_dispatch(argv: list[str]) -> int:
    """
    Выполнить подкоманду.

    Returns:
        0 — успех, 1 — ошибка использования, 2 — ошибка выполнения
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return EXIT_OK if not e.code else EXIT_USAGE
    except KeyboardInterrupt:
        logger.info("Прервано (Ctrl+C)")
        return EXIT_RUNTIME
    except Exception as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_RUNTIME
