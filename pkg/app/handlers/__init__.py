"""
Командная строка: разбор аргументов и обработчики подкоманд.
"""
from app.handlers.commands import setup_handlers
from app.handlers.parser import UsageError, cli_dispatch

__all__ = ["UsageError", "cli_dispatch", "setup_handlers"]
