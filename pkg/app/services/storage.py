"""
Хранение результатов бенчмарков в SQLite.
"""
import logging
from datetime import datetime
from typing import Iterable

from sqlalchemy import func, select
from sqlalchemy.orm import Session, sessionmaker

from app.database.models import BenchRun
from app.services.bench import BenchRecord

logger = logging.getLogger(__name__)


class BenchStorage:
    """Менеджер истории замеров."""

    def __init__(self):
        self._session_maker: sessionmaker[Session] | None = None

    def set_session_maker(self, session_maker: sessionmaker[Session]):
        """Установить session maker."""
        self._session_maker = session_maker

    @property
    def enabled(self) -> bool:
        return self._session_maker is not None

    def _get_session(self) -> Session:
        """Получить сессию."""
        if self._session_maker is None:
            raise RuntimeError("Session maker не установлен")
        return self._session_maker()

    def save_records(self, records: Iterable[BenchRecord], propagator_kind: str) -> int:
        """Сохранить замеры, вернуть их число."""
        now = datetime.utcnow()
        with self._get_session() as session:
            runs = [
                BenchRun(created_at=now, propagator_kind=propagator_kind, **record.as_row())
                for record in records
            ]
            session.add_all(runs)
            session.commit()
        logger.info(f"Сохранено замеров: {len(runs)} ({propagator_kind})")
        return len(runs)

    def get_records(self, limit: int | None = None) -> list[BenchRun]:
        """Замеры, новые первыми."""
        with self._get_session() as session:
            query = select(BenchRun).order_by(BenchRun.created_at.desc(), BenchRun.id.desc())
            if limit is not None:
                query = query.limit(limit)
            return list(session.execute(query).scalars().all())

    def get_record_count(self) -> int:
        """Количество сохранённых замеров."""
        with self._get_session() as session:
            result = session.execute(select(func.count(BenchRun.id)))
            return result.scalar() or 0

    def clear(self) -> int:
        """Удалить всю историю."""
        with self._get_session() as session:
            runs = session.execute(select(BenchRun)).scalars().all()
            for run in runs:
                session.delete(run)
            session.commit()
        logger.info(f"История замеров очищена ({len(runs)})")
        return len(runs)
