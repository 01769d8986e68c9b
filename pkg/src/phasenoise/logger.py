import logging
import sys
from functools import wraps

LOGGER_NAME = "phasenoise"


def init_logging(logging_level):
    """
    initialize the phasenoise logger

    logs go to stderr so that stdout only ever carries the JSON or CSV
    documents a command produces.
    """
    formatter = logging.Formatter("%(asctime)s %(levelname)s %(message)s")
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)
    handler.setLevel(logging_level)

    root = logging.getLogger()
    # re-initializing (ie multiple CliRunner invocations) replaces the handler
    for existing in list(root.handlers):
        if getattr(existing, "_phasenoise", False):
            root.removeHandler(existing)

    handler._phasenoise = True
    root.addHandler(handler)
    # set the top level logger to DEBUG while the console stream handler is
    # actually set to whatever you passed in using --logging-level which is
    # INFO by default
    root.setLevel(logging.DEBUG)

    # numerical warnings (truncation loss, degenerate extremal, ...) are
    # reported through the same handler
    logging.captureWarnings(True)

    logging.getLogger("py.warnings").setLevel(logging.WARNING)

    debug("logger initialized")


def _logger():
    return logging.getLogger(LOGGER_NAME)


@wraps(logging.log)
def log(*args, **kwargs):
    _logger().log(*args, **kwargs)


@wraps(logging.debug)
def debug(*args, **kwargs):
    _logger().debug(*args, **kwargs)


@wraps(logging.info)
def info(*args, **kwargs):
    _logger().info(*args, **kwargs)


@wraps(logging.warning)
def warning(*args, **kwargs):
    _logger().warning(*args, **kwargs)


@wraps(logging.error)
def error(*args, **kwargs):
    _logger().error(*args, **kwargs)


@wraps(logging.exception)
def exception(*args, **kwargs):
    _logger().exception(*args, **kwargs)
