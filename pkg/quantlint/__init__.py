from .config import get_config
from .logging_conf import logger_setup, get_logger

__all__ = [
    "get_config",
    "logger_setup",
    "get_logger",
]
