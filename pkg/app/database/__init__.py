"""
База данных истории бенчмарков.
"""
from app.database.engine import close_db, db_url, get_session_maker, init_db
from app.database.models import BenchRun

__all__ = ["close_db", "db_url", "get_session_maker", "init_db", "BenchRun"]
