"""
reading and writing state documents

a state document is a JSON object:

    {"dim": 3, "amplitudes": [[0.6, 0.0], [0.8, 0.0], [0.0, 0.0]]}

states are canonicalized before they are written and floats are written with
17 significant digits so a write / read cycle reproduces the amplitudes.
"""

import json
import math
from pathlib import Path

import numpy as np

from phasenoise import logger
from phasenoise.errors import StateFileError
from phasenoise.fock import NORM_TOL, PureState, canonicalize
from phasenoise.utils import dumps


def read_document(filepath, kind="state"):
    """
    load a JSON document, converting every failure into a StateFileError
    """
    filepath = Path(filepath)

    try:
        with open(filepath, "r", encoding="utf8") as _input:
            return json.loads(_input.read())
    except FileNotFoundError:
        raise StateFileError(f'{kind} file "{filepath}" does not exist')
    except OSError as e:
        raise StateFileError(f'unable to read {kind} file "{filepath}": {e}')
    except json.JSONDecodeError as e:
        raise StateFileError(
            f'{kind} file "{filepath}" is not valid JSON: {e.msg} '
            f"(line {e.lineno} column {e.colno})"
        )


def write_document(document, filepath, precision=17):
    filepath = Path(filepath)

    if filepath.parent and not filepath.parent.exists():
        filepath.parent.mkdir(parents=True, exist_ok=True)

    with open(filepath, "w", encoding="utf8") as output:
        output.write(dumps(document, precision=precision))
        output.write("\n")

    logger.debug(f"wrote {filepath}")


def state_to_document(state):
    state = canonicalize(state)
    return {
        "dim": state.dim,
        "amplitudes": [
            [float(value.real), float(value.imag)]
            for value in state.amplitudes
        ],
    }


def state_from_document(document, source="<document>"):
    if not isinstance(document, dict):
        raise StateFileError(f"{source}: a state document must be an object")

    missing = [key for key in ("dim", "amplitudes") if key not in document]
    if missing:
        raise StateFileError(
            f"{source}: missing field(s) {', '.join(missing)}"
        )

    dim = document["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise StateFileError(f"{source}: dim must be a positive integer")

    amplitudes = document["amplitudes"]
    if not isinstance(amplitudes, list) or len(amplitudes) != dim:
        raise StateFileError(
            f"{source}: expected {dim} amplitudes, "
            f"got {len(amplitudes) if isinstance(amplitudes, list) else 'none'}"
        )

    values = np.zeros(dim, dtype=complex)
    for index, pair in enumerate(amplitudes):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool)
                for x in pair
            )
        ):
            raise StateFileError(
                f"{source}: amplitude {index} must be a [re, im] pair of numbers"
            )

        if not all(math.isfinite(x) for x in pair):
            raise StateFileError(f"{source}: amplitude {index} is not finite")

        values[index] = complex(pair[0], pair[1])

    state = PureState(values)

    if not state.is_normalized(NORM_TOL):
        logger.debug(
            f"{source}: renormalizing state with norm^2 {state.norm2!r}"
        )

    try:
        return canonicalize(state)
    except Exception as e:
        raise StateFileError(f"{source}: {e}")


def save_state(state, filepath, precision=17):
    write_document(state_to_document(state), filepath, precision=precision)


def load_state(filepath):
    document = read_document(filepath, kind="state")
    return state_from_document(document, source=str(filepath))
