"""Logging setup for the command-line entry points."""

import logging

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def configure_logging(verbosity: int = 0) -> logging.Logger:
    """Attach one stream handler to the ``pyfraxis`` logger.

    ``verbosity`` 0 logs warnings, 1 adds INFO, 2 or more adds DEBUG. Calling
    again replaces the handler instead of stacking another one.
    """
    logger = logging.getLogger("pyfraxis")
    for handler in list(logger.handlers):
        if getattr(handler, "_pyfraxis", False):
            logger.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._pyfraxis = True  # type: ignore[attr-defined]
    logger.addHandler(handler)
    logger.setLevel(_LEVELS.get(verbosity, logging.DEBUG))
    return logger
