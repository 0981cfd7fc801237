import logging
import os
from typing import Optional
from typing import Union

import colorlog

from cabsim.constants import LOG_COLORS
from cabsim.constants import LOG_DATEFMT
from cabsim.constants import LOG_FORMAT

_LEVEL_ENV = "CABSIM_LOG_LEVEL"
_FORMATTER = colorlog.ColoredFormatter(
    LOG_FORMAT, datefmt=LOG_DATEFMT, log_colors=LOG_COLORS
)
_registered = set()


def _default_level() -> str:
    return os.environ.get(_LEVEL_ENV, "INFO").upper()


def setup_logger(name: str, level: Optional[Union[int, str]] = None) -> logging.Logger:
    """Colored stderr logger named like ``[BatchRunner]``.

    Calling it again for the same name replaces the handler.
    """
    logger = logging.getLogger(name)
    logger.setLevel(level or _default_level())
    logger.handlers.clear()

    handler = logging.StreamHandler()
    handler.setFormatter(_FORMATTER)
    logger.addHandler(handler)
    logger.propagate = False

    _registered.add(name)
    return logger


def set_level(level: Union[int, str]) -> None:
    """Change the level of every logger created through `setup_logger`."""
    for name in _registered:
        logging.getLogger(name).setLevel(level)
