"""
Точка входа — командная строка.
"""
import logging
import sys

from app.config import load_config
from app.database import close_db, db_url, get_session_maker, init_db
from app.handlers import cli_dispatch, setup_handlers
from app.services.storage import BenchStorage


# Настройка логирования
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
    handlers=[
        logging.StreamHandler(sys.stdout),
    ],
)
logger = logging.getLogger(__name__)


def main() -> int:
    """Главная функция."""
    try:
        config = load_config()
    except ValueError as e:
        logger.error(f"Ошибка конфигурации: {e}")
        return 1

    logging.getLogger().setLevel(config.runtime.log_level)

    storage = None
    if config.storage.enabled:
        init_db(db_url(config.storage.db_path))
        storage = BenchStorage()
        storage.set_session_maker(get_session_maker())

    setup_handlers(config, storage)
    try:
        return cli_dispatch(sys.argv[1:])
    finally:
        if storage is not None:
            close_db()


if __name__ == "__main__":
    sys.exit(main())
