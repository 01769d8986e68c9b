"""
various phasenoise utilities shared by the numerical modules and the CLI
"""

import json
import math
import sys

import numpy as np
from mpire import WorkerPool

from phasenoise import logger
from phasenoise.config import CONFIG


def fsum(values):
    """
    correctly rounded sum of a real sequence, so results do not depend on
    the order numpy would otherwise pick for a reduction.
    """
    return math.fsum(np.asarray(values, dtype=float).tolist())


def csum(values):
    """
    correctly rounded sum of a complex sequence (real and imaginary parts are
    summed independently)
    """
    values = np.asarray(values, dtype=complex)
    return complex(fsum(values.real), fsum(values.imag))


def generator(seed, index, stream=0):
    """
    counter-based random generator for item `index` of a run seeded with
    `seed`. Each item gets its own stream so results do not depend on the
    order (or the process) items are evaluated in. `stream` separates
    independent consumers of the same seed.
    """
    if seed < 0 or seed >= 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")

    sequence = np.random.SeedSequence([int(seed), int(stream), int(index)])
    return np.random.Generator(np.random.Philox(sequence))


def format_float(value, precision=None):
    if precision is None:
        precision = CONFIG.int("PHASENOISE_PRECISION")

    value = float(value)

    if math.isnan(value):
        return "NaN"

    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"

    return format(value, f".{precision}g")


def dumps(data, precision=None, indent=2, _level=0):
    """
    render `data` as JSON with sorted keys and every float printed with
    `precision` significant digits.
    """
    pad = " " * (indent * (_level + 1))
    end_pad = " " * (indent * _level)

    if isinstance(data, bool) or data is None or isinstance(data, str):
        return json.dumps(data)

    if isinstance(data, (int, np.integer)):
        return str(int(data))

    if isinstance(data, (float, np.floating)):
        return format_float(data, precision)

    if isinstance(data, dict):
        if not data:
            return "{}"

        items = [
            f"{pad}{json.dumps(str(key))}: "
            f"{dumps(data[key], precision, indent, _level + 1)}"
            for key in sorted(data.keys())
        ]
        return "{\n" + ",\n".join(items) + f"\n{end_pad}}}"

    if isinstance(data, (list, tuple, np.ndarray)):
        if len(data) == 0:
            return "[]"

        items = [
            f"{pad}{dumps(value, precision, indent, _level + 1)}"
            for value in data
        ]
        return "[\n" + ",\n".join(items) + f"\n{end_pad}]"

    raise TypeError(f"cannot render {type(data).__name__} as JSON")


def complex_pair(value):
    value = complex(value)
    return [value.real, value.imag]


def _start_method():
    if sys.platform == "darwin":
        logger.debug(
            "MAC OS detected, using 'forkserver' start method since 'fork' is unstable"
        )
        return "forkserver"

    return "fork"


def ordered_map(func, items, workers=None):
    """
    apply `func` to every element of `items` and return the results in input
    order. Tuples are unpacked into positional arguments (mpire semantics) so
    callers pass one tuple per call when they need several arguments.
    """
    if workers is None:
        workers = CONFIG.int("PHASENOISE_WORKERS")

    items = list(items)

    if workers is None or workers <= 1 or len(items) <= 1:
        return [
            func(*item) if isinstance(item, tuple) else func(item)
            for item in items
        ]

    logger.debug(f"dispatching {len(items)} tasks over {workers} workers")
    with WorkerPool(n_jobs=int(workers), start_method=_start_method()) as pool:
        return pool.map(func, items)
