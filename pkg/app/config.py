"""
Загрузка конфигурации из .env
"""
import os
from dataclasses import dataclass, field
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).parent.parent


def parse_range(value: str, key: str) -> tuple[float, float]:
    """Парсит диапазон вида 'lo,hi'."""
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != 2:
        raise ValueError(f"{key}: ожидается 'lo,hi', получено '{value}'")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValueError(f"{key}: границы должны быть числами, получено '{value}'") from None
    if lo > hi:
        raise ValueError(f"{key}: нижняя граница больше верхней")
    return lo, hi


def get_env(key: str, default: str | None = None, required: bool = True) -> str:
    """Получить переменную окружения с проверкой."""
    value = os.getenv(key, default)
    if required and not value:
        raise ValueError(f"Переменная окружения {key} не задана!")
    return value or ""


def get_int(key: str, default: int, minimum: int = 1) -> int:
    raw = get_env(key, str(default))
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{key}: ожидается целое число, получено '{raw}'") from None
    if value < minimum:
        raise ValueError(f"{key}: значение должно быть не меньше {minimum}")
    return value


@dataclass
class RuntimeConfig:
    threads: int = 1
    bench_reps: int = 5
    output_dir: Path = Path("output")
    log_level: str = "INFO"


@dataclass
class StorageConfig:
    db_path: str | None = str(BASE_DIR / "data.db")

    @property
    def enabled(self) -> bool:
        return bool(self.db_path)


@dataclass
class GenDefaults:
    bc_ic_range: tuple[float, float] = (0.0, 100.0)
    lambda_range: tuple[float, float] = (0.0, 1.0)
    t_range: tuple[int, int] = (0, 1000)


@dataclass
class Config:
    runtime: RuntimeConfig = field(default_factory=RuntimeConfig)
    storage: StorageConfig = field(default_factory=StorageConfig)
    gen: GenDefaults = field(default_factory=GenDefaults)


def load_config() -> Config:
    """Загрузить всю конфигурацию."""
    log_level = get_env("LOG_LEVEL", "INFO").upper()
    if log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        raise ValueError(f"LOG_LEVEL: неизвестный уровень '{log_level}'")

    t_lo, t_hi = parse_range(get_env("PDE_T_RANGE", "0,1000"), "PDE_T_RANGE")
    if t_lo < 0 or not (t_lo.is_integer() and t_hi.is_integer()):
        raise ValueError("PDE_T_RANGE: границы должны быть неотрицательными целыми")

    # Пустое значение отключает сохранение бенчмарков
    db_path = os.getenv("PDE_DB_PATH", str(BASE_DIR / "data.db")).strip() or None

    return Config(
        runtime=RuntimeConfig(
            threads=get_int("PDE_THREADS", 1),
            bench_reps=get_int("PDE_BENCH_REPS", 5, minimum=3),
            output_dir=Path(get_env("PDE_OUTPUT_DIR", "output")),
            log_level=log_level,
        ),
        storage=StorageConfig(db_path=db_path),
        gen=GenDefaults(
            bc_ic_range=parse_range(get_env("PDE_BC_RANGE", "0,100"), "PDE_BC_RANGE"),
            lambda_range=parse_range(get_env("PDE_LAMBDA_RANGE", "0,1"), "PDE_LAMBDA_RANGE"),
            t_range=(int(t_lo), int(t_hi)),
        ),
    )
