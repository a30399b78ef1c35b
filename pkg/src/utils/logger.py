import logging
import sys
from pathlib import Path
from logging.handlers import RotatingFileHandler

from .config import LOG_LEVEL_STR, LOG_TO_FILE

_BASE_DIR = Path(__file__).resolve().parents[2]
LOG_DIR = _BASE_DIR / "logs"
LOG_FILE = LOG_DIR / "hocm.log"
ROOT_NAME = "hocm"
LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

_FORMATTER = logging.Formatter(
    fmt="%(asctime)s │ %(levelname)-8s │ %(name)s │ %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)


def resolve_level(level: int | str | None) -> int:
    """``"debug"``, ``"INFO"``, ``logging.WARNING`` or ``None`` (env default) → numeric level."""
    if level is None:
        level = LOG_LEVEL_STR
    if isinstance(level, int):
        return level
    return getattr(logging, str(level).strip().upper(), logging.INFO)


def setup_logger(
    name: str = ROOT_NAME,
    level: int | str | None = None,
    log_to_file: bool | None = None,
    max_bytes: int = 5 * 1024 * 1024,
    backup_count: int = 3,
) -> logging.Logger:
    """
    Stdout handler plus a rotating file under ``logs/``; calling it again
    only updates the level. File handler failures are ignored so read-only
    checkouts still run.
    """
    level = resolve_level(level)
    log_to_file = LOG_TO_FILE if log_to_file is None else log_to_file
    logger = logging.getLogger(name)
    logger.setLevel(level)

    if logger.handlers:
        for handler in logger.handlers:
            handler.setLevel(level)
        return logger

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(level)
    console_handler.setFormatter(_FORMATTER)
    logger.addHandler(console_handler)

    if log_to_file:
        try:
            LOG_DIR.mkdir(parents=True, exist_ok=True)
            file_handler = RotatingFileHandler(
                LOG_FILE,
                maxBytes=max_bytes,
                backupCount=backup_count,
                encoding="utf-8",
            )
            file_handler.setLevel(level)
            file_handler.setFormatter(_FORMATTER)
            logger.addHandler(file_handler)
        except OSError:
            pass

    logger.propagate = False
    return logger


def get_logger(name: str = ROOT_NAME) -> logging.Logger:
    """Child loggers (``hocm.fock`` etc.) carry no handlers and inherit the root's level."""
    root = logging.getLogger(ROOT_NAME)
    if not root.handlers:
        setup_logger(ROOT_NAME)
    if name == ROOT_NAME or name.startswith(ROOT_NAME + "."):
        return logging.getLogger(name)
    existing = logging.getLogger(name)
    return existing if existing.handlers else setup_logger(name)


def set_level(level: int | str) -> int:
    """Change the level of the ``hocm`` tree at runtime; returns the numeric level."""
    numeric = resolve_level(level)
    setup_logger(ROOT_NAME, level=numeric)
    return numeric


logger = setup_logger()
