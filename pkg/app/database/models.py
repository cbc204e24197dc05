"""
Модели базы данных.
"""
from datetime import datetime

from sqlalchemy import DateTime, Float, Integer, String
from sqlalchemy.orm import Mapped, mapped_column

from app.database.engine import Base


class BenchRun(Base):
    """Один замер бенчмарка."""

    __tablename__ = "bench_runs"

    id: Mapped[int] = mapped_column(Integer, primary_key=True, autoincrement=True)
    created_at: Mapped[datetime] = mapped_column(DateTime, default=datetime.utcnow, nullable=False, index=True)
    propagator_kind: Mapped[str] = mapped_column(String(16), nullable=False)

    grid_rows: Mapped[int] = mapped_column(Integer, nullable=False)
    grid_cols: Mapped[int] = mapped_column(Integer, nullable=False)
    steps: Mapped[int] = mapped_column(Integer, nullable=False)
    pred_step: Mapped[int] = mapped_column(Integer, nullable=False)
    numerical_time_s: Mapped[float] = mapped_column(Float, nullable=False)
    propagator_time_s: Mapped[float] = mapped_column(Float, nullable=False)
    ratio: Mapped[float] = mapped_column(Float, nullable=False)
    reps: Mapped[int] = mapped_column(Integer, nullable=False)
    mae: Mapped[float] = mapped_column(Float, nullable=False)

    def __repr__(self) -> str:
        return f"<BenchRun {self.grid_rows}x{self.grid_cols} steps={self.steps} P={self.pred_step}>"
