"""
Движок базы данных истории бенчмарков и сессии.
"""
import logging
from pathlib import Path

from sqlalchemy import Engine, create_engine
from sqlalchemy.orm import DeclarativeBase, Session, sessionmaker
from sqlalchemy.pool import StaticPool

logger = logging.getLogger(__name__)

# Путь к файлу БД по умолчанию (рядом с main.py)
BASE_DIR = Path(__file__).parent.parent.parent
DB_PATH = BASE_DIR / "data.db"

MEMORY_URL = "sqlite://"


class Base(DeclarativeBase):
    """Базовый класс для моделей."""
    pass


_engine: Engine | None = None
_session_maker: sessionmaker[Session] | None = None


def db_url(path: str | Path | None = None) -> str:
    """URL SQLite; ':memory:' — база в памяти."""
    if path == ":memory:":
        return MEMORY_URL
    return f"sqlite:///{path or DB_PATH}"


def get_session_maker() -> sessionmaker[Session]:
    """Получить session maker."""
    if _session_maker is None:
        raise RuntimeError("История бенчмарков не подключена. Вызовите init_db()")
    return _session_maker


def init_db(url: str | None = None):
    """Подключить SQLite и создать таблицу замеров."""
    global _engine, _session_maker

    url = url or db_url()
    logger.info(f"История бенчмарков: {url}")

    options = {"connect_args": {"check_same_thread": False}}
    if url == MEMORY_URL:
        # База в памяти живёт, пока открыто единственное соединение
        options["poolclass"] = StaticPool
    _engine = create_engine(url, echo=False, **options)
    _session_maker = sessionmaker(bind=_engine, class_=Session, expire_on_commit=False, autoflush=False)

    # Импорт регистрирует модели в метаданных
    from app.database import models  # noqa: F401
    Base.metadata.create_all(_engine)


def close_db():
    global _engine, _session_maker
    if _engine is not None:
        _engine.dispose()
        _engine = None
        _session_maker = None
        logger.info("История бенчмарков отключена")
