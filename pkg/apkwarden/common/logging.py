# apkwarden/common/logging.py
from __future__ import annotations

import logging


def get_logger(name: str = "apkwarden", level: int | str = logging.INFO) -> logging.Logger:
    """
    Return the package logger.
    If no handlers are set anywhere, we add a basicConfig once.
    """
    logger = logging.getLogger(name)
    if not logging.getLogger().handlers and not logger.handlers:
        logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logger.setLevel(level)
    return logger


def set_level(level: int | str, prefix: str = "apkwarden") -> None:
    """Apply ``level`` to the root logger and every already-created package logger."""
    logging.getLogger().setLevel(level)
    for name, logger in logging.root.manager.loggerDict.items():
        if isinstance(logger, logging.Logger) and (name == prefix or name.startswith(prefix + ".")):
            logger.setLevel(level)
