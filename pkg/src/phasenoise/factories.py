"""
state factories and the textual state description language

a state is described as `family:key=value,key=value`, for example:

    number:n=5
    coherent:alpha=2+1i
    tps:n0=10,theta=0.3
    triangle:n0=100
    file:states/x.json
    raw:c=0.6;0.8i

values are integers, floats, complex literals written `a+bi` / `a-bi` or
double quoted strings (paths containing commas must be quoted).
"""

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import gammaln, pdtrc

from phasenoise import logger
from phasenoise.config import CONFIG
from phasenoise.errors import (
    BadValueError,
    DimExhaustedError,
    DomainError,
    FockIndexError,
    MissingParamError,
    ParityError,
    ParseError,
    RangeError,
    UnknownFamilyError,
)
from phasenoise.fock import PureState, canonicalize
from phasenoise.statefile import load_state

INT_REGEX = re.compile(r"^[+-]?\d+$")


def number_state(n, dim=None):
    """
    the Fock state |n> on `dim` levels (default n + 1)
    """
    if dim is None:
        dim = n + 1

    if n < 0:
        raise DomainError(f"photon number must be nonnegative, got {n}")

    if dim < 1:
        raise DomainError(f"dim must be positive, got {dim}")

    if n >= dim:
        raise FockIndexError(f"|{n}> does not fit in {dim} Fock levels")

    amplitudes = np.zeros(dim, dtype=complex)
    amplitudes[n] = 1.0
    return PureState(amplitudes)


def coherent_dim(mean_n, tail_tol, max_dim):
    """
    smallest dimension D <= max_dim whose discarded Poisson tail P(n >= D)
    is below tail_tol
    """
    if mean_n == 0:
        return 1

    # a window of mean + 20 sigma covers any tail_tol we accept; fall back to
    # the whole range only when it does not
    window = min(max_dim, int(math.ceil(mean_n + 20 * math.sqrt(mean_n) + 50)))

    for size in (window, max_dim):
        levels = np.arange(size)
        # pdtrc(k, m) = P(n > k) so tails[D - 1] = P(n >= D)
        tails = pdtrc(levels, mean_n)
        below = np.flatnonzero(tails < tail_tol)

        if below.size:
            return int(below[0]) + 1

        if size == max_dim:
            break

    raise DimExhaustedError(
        f"coherent state with |alpha|^2 = {mean_n!r} keeps tail probability "
        f"{float(pdtrc(max_dim - 1, mean_n)):.3e} >= {tail_tol:.0e} "
        f"at max_dim = {max_dim}"
    )


def coherent_state(alpha, tail_tol=None, max_dim=None):
    """
    |alpha> truncated to the smallest dimension whose discarded tail mass is
    below `tail_tol`, then renormalized.

    c_{n+1} = c_n alpha / sqrt(n + 1) is evaluated as a log magnitude
    -|alpha|^2/2 + n log|alpha| - log(n!)/2 times a running product of the
    unit phase alpha/|alpha|, which is the same recurrence without overflow
    for large |alpha|.
    """
    if tail_tol is None:
        tail_tol = CONFIG.float("PHASENOISE_TAIL_TOL")

    if max_dim is None:
        max_dim = CONFIG.int("PHASENOISE_MAX_DIM")

    if not 0 < tail_tol <= 1e-6:
        raise DomainError(f"tail_tol must lie in (0, 1e-6], got {tail_tol!r}")

    if max_dim < 2:
        raise DomainError(f"max_dim must be at least 2, got {max_dim}")

    alpha = complex(alpha)
    radius = abs(alpha)
    mean_n = radius**2

    if radius == 0:
        return number_state(0, 1)

    dim = coherent_dim(mean_n, tail_tol, max_dim)
    levels = np.arange(dim, dtype=float)

    magnitudes = np.exp(
        -mean_n / 2 + levels * math.log(radius) - gammaln(levels + 1) / 2
    )
    steps = np.full(dim, alpha / radius, dtype=complex)
    steps[0] = 1.0
    phases = np.cumprod(steps)

    return canonicalize(PureState(magnitudes * phases))


def truncated_phase_state(theta, n0):
    """
    (n0 + 1)^(-1/2) sum_{n=0}^{n0} e^{i n theta} |n>
    """
    if n0 < 1:
        raise DomainError(f"n0 must be at least 1, got {n0}")

    if theta == 0:
        amplitudes = np.full(n0 + 1, 1 / math.sqrt(n0 + 1), dtype=complex)
    else:
        levels = np.arange(n0 + 1, dtype=float)
        amplitudes = np.exp(1j * theta * levels) / math.sqrt(n0 + 1)

    return canonicalize(PureState(amplitudes))


def triangle_weights(n0):
    """
    the integer weights n for n <= n0/2 and n0 - n above it
    """
    if n0 < 2 or n0 % 2:
        raise ParityError(f"triangle state needs an even n0 >= 2, got {n0}")

    levels = np.arange(n0 + 1)
    return np.where(levels <= n0 // 2, levels, n0 - levels)


def triangle_state(n0):
    """
    K [sum_{n<=n0/2} n|n> + sum_{n>n0/2} (n0 - n)|n>] with
    K = 2 sqrt(3) / sqrt(n0 (n0^2 + 2)).
    """
    weights = triangle_weights(n0)

    # sum w_n^2 = n0 (n0^2 + 2) / 12 exactly
    if int(np.sum(weights.astype(np.int64) ** 2)) * 12 != n0 * (n0**2 + 2):
        raise RuntimeError(f"triangle weights for n0 = {n0} are malformed")

    scale = 2 * math.sqrt(3) / math.sqrt(n0 * (n0**2 + 2))
    return canonicalize(PureState(scale * weights.astype(float)))


def raw_state(amplitudes):
    return canonicalize(PureState(np.asarray(amplitudes, dtype=complex)))


def truncated_phase_closed_form(n0):
    """
    exact (var_n, |<E->|) of a truncated phase state:
    n0^2/12 + n0/6 and n0/(n0 + 1)
    """
    return (
        Fraction(n0**2, 12) + Fraction(n0, 6),
        Fraction(n0, n0 + 1),
    )


def triangle_phase_noise_exact(n0):
    """
    exact phase noise of the triangle state,

        <E-> = sum w_n w_{n+1} / sum w_n^2 = (n0^2 - 4) / (n0^2 + 2)
        1 - <E->^2 = 12 (n0^2 - 1) / (n0^2 + 2)^2

    which tends to 12 / n0^2 for large n0.
    """
    triangle_weights(n0)
    return Fraction(12 * (n0**2 - 1), (n0**2 + 2) ** 2)


# family name -> parameter name -> (kind, required, default)
FAMILIES = {
    "number": {
        "n": ("int", True, None),
        "dim": ("int", False, None),
    },
    "coherent": {
        "alpha": ("complex", True, None),
    },
    "truncated_phase": {
        "n0": ("int", True, None),
        "theta": ("float", False, 0.0),
    },
    "triangle": {
        "n0": ("int", True, None),
    },
    "file": {
        "path": ("str", True, None),
    },
    "raw": {
        "c": ("complex_list", True, None),
    },
}

ALIASES = {
    "number": "number",
    "fock": "number",
    "coherent": "coherent",
    "truncated_phase": "truncated_phase",
    "tps": "truncated_phase",
    "triangle": "triangle",
    "file": "file",
    "raw": "raw",
}


def _format_complex(value):
    value = complex(value)
    sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
    return f"{value.real!r}{sign}{abs(value.imag)!r}i"


def _format_value(kind, value):
    if kind == "int":
        return str(int(value))

    if kind == "float":
        return repr(float(value))

    if kind == "complex":
        return _format_complex(value)

    if kind == "complex_list":
        return ";".join(_format_complex(v) for v in value)

    return f'"{value}"'


@dataclass(frozen=True)
class StateSpec:
    family: str
    params: dict = field(default_factory=dict)

    def to_string(self):
        definitions = FAMILIES[self.family]
        parts = [
            f"{key}={_format_value(definitions[key][0], self.params[key])}"
            for key in definitions
            if self.params.get(key) is not None
        ]
        return f"{self.family}:{','.join(parts)}"

    def with_param(self, key, value):
        params = dict(self.params)
        params[key] = value
        return StateSpec(self.family, params)

    def __str__(self):
        return self.to_string()


def _parse_complex(text):
    literal = text.strip()

    if literal.endswith("i"):
        literal = literal[:-1] + "j"

    if not literal or "i" in literal or literal in ("j", "+j", "-j"):
        raise ValueError(f'"{text}" is not a complex literal')

    return complex(literal)


def parse_value(kind, text):
    """
    convert the textual value of a parameter, raising ValueError on failure
    """
    text = text.strip()

    if kind == "int":
        if not INT_REGEX.match(text):
            raise ValueError(f'"{text}" is not an integer')
        return int(text)

    if kind == "float":
        value = float(text)
        if not math.isfinite(value):
            raise ValueError(f'"{text}" is not a finite number')
        return value

    if kind == "complex":
        value = _parse_complex(text)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ValueError(f'"{text}" is not a finite complex number')
        return value

    if kind == "complex_list":
        values = tuple(_parse_complex(part) for part in text.split(";"))
        if not values:
            raise ValueError("expected at least one amplitude")
        return values

    if len(text) >= 2 and text[0] == text[-1] == '"':
        text = text[1:-1]

    if not text:
        raise ValueError("expected a non-empty string")

    return text


def _split_params(text, offset):
    """
    split `key=value,key=value` on commas outside double quotes, returning
    (token, position) pairs
    """
    tokens = []
    start = 0
    quoted = False

    for index, char in enumerate(text):
        if char == '"':
            quoted = not quoted
        elif char == "," and not quoted:
            tokens.append((text[start:index], offset + start))
            start = index + 1

    if quoted:
        raise ParseError("unterminated quote", text, offset + len(text))

    tokens.append((text[start:], offset + start))
    return tokens


def _validate(family, params, text, positions):
    def fail(key, message):
        raise BadValueError(message, text, positions.get(key, 0))

    if family == "number":
        if params["n"] < 0:
            fail("n", f"n must be nonnegative, got {params['n']}")
        dim = params.get("dim")
        if dim is not None and dim <= params["n"]:
            fail("dim", f"dim must exceed n, got dim={dim}, n={params['n']}")

    if family == "truncated_phase" and params["n0"] < 1:
        fail("n0", f"n0 must be at least 1, got {params['n0']}")

    if family == "triangle":
        n0 = params["n0"]
        if n0 < 2 or n0 % 2:
            fail("n0", f"triangle n0 must be even and >= 2, got {n0}")


def parse_spec(text):
    """
    parse `family:key=value,...` into a StateSpec

    raises:
        ParseError for malformed text, UnknownFamilyError, MissingParamError
        and BadValueError, all carrying the offending position.
    """
    text = text.strip()
    colon = text.find(":")

    if colon == -1:
        raise ParseError(
            "expected ':' after the state family", text, len(text)
        )

    name = text[:colon].strip()
    if not name:
        raise ParseError("missing state family", text, 0)

    family = ALIASES.get(name.lower())
    if family is None:
        raise UnknownFamilyError(
            f'unknown state family "{name}", expected one of '
            f"{', '.join(sorted(ALIASES))}",
            text,
            0,
        )

    definitions = FAMILIES[family]
    body = text[colon + 1 :]
    tokens = []

    if body.strip():
        tokens = _split_params(body, colon + 1)

    # file:<path> shorthand
    if (
        family == "file"
        and len(tokens) == 1
        and not tokens[0][0].strip().startswith("path=")
    ):
        token, position = tokens[0]
        tokens = [(f"path={token}", position - len("path="))]

    params = {}
    positions = {}

    for token, position in tokens:
        equals = token.find("=")

        if equals < 1 or not token[:equals].strip():
            raise ParseError("expected key=value", text, max(position, 0))

        key = token[:equals].strip()
        value_position = max(position + equals + 1, 0)

        if key not in definitions:
            raise BadValueError(
                f'unexpected parameter "{key}" for family {family}, '
                f"expected {', '.join(definitions)}",
                text,
                max(position, 0),
            )

        if key in params:
            raise BadValueError(
                f'parameter "{key}" given twice', text, max(position, 0)
            )

        kind = definitions[key][0]
        try:
            params[key] = parse_value(kind, token[equals + 1 :])
        except ValueError as e:
            raise BadValueError(
                f"bad value for {key} ({kind}): {e}", text, value_position
            )

        positions[key] = value_position

    for key, (kind, required, default) in definitions.items():
        if key in params:
            continue

        if required:
            raise MissingParamError(
                f'missing parameter "{key}" for family {family}',
                text,
                len(text),
            )

        if default is not None:
            params[key] = default

    _validate(family, params, text, positions)
    return StateSpec(family, params)


def realize(spec, defaults=None):
    """
    build the state a StateSpec describes

    parameters:
        spec(StateSpec): the parsed description
        defaults(dict): optional "tail_tol" and "max_dim" used by coherent
                        states, falling back to the configured values
    """
    defaults = defaults or {}
    params = spec.params
    logger.debug(f"realizing {spec.to_string()}")

    if spec.family == "number":
        return number_state(params["n"], params.get("dim"))

    if spec.family == "coherent":
        return coherent_state(
            params["alpha"],
            tail_tol=defaults.get("tail_tol"),
            max_dim=defaults.get("max_dim"),
        )

    if spec.family == "truncated_phase":
        return truncated_phase_state(params.get("theta", 0.0), params["n0"])

    if spec.family == "triangle":
        return triangle_state(params["n0"])

    if spec.family == "file":
        return load_state(params["path"])

    if spec.family == "raw":
        return raw_state(params["c"])

    raise UnknownFamilyError(f'unknown state family "{spec.family}"')


def parse_range(text, kind="int"):
    """
    parse `start:step:end` into the ascending list of values it covers. The
    end must be hit exactly; a bare value is a one element range.
    """
    parts = text.split(":")

    if len(parts) == 1:
        try:
            return [parse_value(kind, parts[0])]
        except ValueError as e:
            raise BadValueError(f"bad value: {e}", text, 0)

    if len(parts) != 3:
        raise RangeError("expected start:step:end", text, 0)

    values = []
    position = 0
    for part in parts:
        try:
            values.append(parse_value(kind, part))
        except ValueError as e:
            raise RangeError(f"bad range bound: {e}", text, position)
        position += len(part) + 1

    start, step, end = values

    if step <= 0:
        raise RangeError(
            "step must be positive", text, len(parts[0]) + 1
        )

    if end < start:
        raise RangeError("end lies below start", text, len(text) - len(parts[2]))

    if kind == "int":
        if (end - start) % step:
            raise RangeError(
                f"{start}:{step}:{end} does not hit the end exactly",
                text,
                len(text) - len(parts[2]),
            )
        return list(range(start, end + 1, step))

    count = round((end - start) / step)
    if abs(start + count * step - end) > 1e-12 * max(1.0, abs(end)):
        raise RangeError(
            f"{start}:{step}:{end} does not hit the end exactly",
            text,
            len(text) - len(parts[2]),
        )

    return [start + index * step for index in range(count)] + [end]
