"""
pure states on a truncated Fock basis and the Susskind-Glogower operators

A state keeps the amplitudes <n|psi> for n = 0..dim-1. The phase operators
act as

    E+ |n> = |n+1>        E- |n> = (1 - delta_{n,0}) |n-1>

and the cosine / sine operators are C = (E- + E+)/2, S = (E- - E+)/2i.
Operators never grow the dimension: whatever E+ pushes past the top level is
dropped and reported as truncation loss.

Expectation values use E- E+ = 1 and E+ E- = 1 - P0, so every moment is a
single O(dim) pass over the amplitudes and no operator matrix is ever built.
All sums are correctly rounded (math.fsum) which makes every quantity
reproducible bit for bit.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from phasenoise.errors import (
    NormError,
    TruncationLossWarning,
    ZeroVectorError,
)
from phasenoise.utils import csum, fsum

# construction tolerance on sum |c_n|^2
NORM_TOL = 1e-12
# precondition tolerance for operations that require a normalized state
NORM_PRECONDITION_TOL = 1e-10
TRUNCATION_LOSS_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex)

        if amplitudes.ndim != 1:
            raise ValueError(
                f"amplitudes must be one dimensional, got shape {amplitudes.shape}"
            )

        if amplitudes.size < 1:
            raise ValueError("a state needs at least one Fock level")

        if not np.all(np.isfinite(amplitudes)):
            raise ValueError("amplitudes must be finite")

        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def dim(self):
        return self.amplitudes.size

    @property
    def probabilities(self):
        return self.amplitudes.real**2 + self.amplitudes.imag**2

    @property
    def norm2(self):
        return fsum(self.probabilities)

    def is_normalized(self, tol=NORM_TOL):
        return abs(self.norm2 - 1.0) <= tol

    def padded(self, dim):
        """
        the same vector embedded in a larger truncated space
        """
        if dim < self.dim:
            raise ValueError(f"cannot pad a dim {self.dim} state down to {dim}")

        amplitudes = np.zeros(dim, dtype=complex)
        amplitudes[: self.dim] = self.amplitudes
        return PureState(amplitudes)

    def __repr__(self):
        return f"PureState(dim={self.dim}, norm2={self.norm2!r})"


@dataclass(frozen=True)
class Moments:
    mean_n: float
    var_n: float
    e_minus: complex
    p0: float
    c_mean: complex
    s_mean: complex
    c_var: float
    s_var: float

    @property
    def abs_e_minus(self):
        return abs(self.e_minus)


def check_normalized(state, tol=NORM_PRECONDITION_TOL):
    deviation = abs(state.norm2 - 1.0)

    if deviation > tol:
        raise NormError(
            f"state norm deviates from 1 by {deviation:.3e} (tolerance {tol:.0e})"
        )


def e_plus_truncation_loss(state):
    """
    probability E+ pushes out of the truncated space, ie |c_{dim-1}|^2
    """
    return float(state.probabilities[-1])


def apply_e_plus(state):
    """
    raise every level by one; the top amplitude is dropped and a
    TruncationLossWarning is issued when it carried more than 1e-12 of the
    norm. The result is not renormalized.
    """
    loss = e_plus_truncation_loss(state)

    if loss > TRUNCATION_LOSS_TOL:
        warnings.warn(
            f"E+ dropped the top Fock level |{state.dim - 1}> carrying "
            f"probability {loss:.3e}",
            TruncationLossWarning,
            stacklevel=2,
        )

    amplitudes = np.zeros(state.dim, dtype=complex)
    amplitudes[1:] = state.amplitudes[:-1]
    return PureState(amplitudes)


def apply_e_minus(state):
    """
    lower every level by one, annihilating the vacuum component. The result
    is not renormalized; its norm^2 is 1 - |c_0|^2 for a normalized input.
    """
    amplitudes = np.zeros(state.dim, dtype=complex)
    amplitudes[:-1] = state.amplitudes[1:]
    return PureState(amplitudes)


def _shifted_overlap(amplitudes, shift):
    # sum_n conj(c_n) c_{n+shift}
    if amplitudes.size <= shift:
        return 0j

    return csum(np.conj(amplitudes[:-shift]) * amplitudes[shift:])


def expect_e_minus(state):
    """
    <psi|E-|psi> = sum_n conj(c_n) c_{n+1}
    """
    return _shifted_overlap(state.amplitudes, 1)


def moments(state):
    check_normalized(state)

    amplitudes = state.amplitudes
    probabilities = state.probabilities
    levels = np.arange(state.dim, dtype=float)

    mean_n = fsum(levels * probabilities)
    var_n = fsum((levels - mean_n) ** 2 * probabilities)

    e_minus = _shifted_overlap(amplitudes, 1)
    # <E+> is summed directly, not taken as conj(<E->); Im<C> and Im<S> are
    # then the hermiticity round-off
    e_plus = csum(np.conj(amplitudes[1:]) * amplitudes[:-1])
    e_minus_sq = _shifted_overlap(amplitudes, 2)
    e_plus_sq = csum(np.conj(amplitudes[2:]) * amplitudes[:-2])
    p0 = float(probabilities[0])

    c_mean = (e_minus + e_plus) / 2
    s_mean = (e_minus - e_plus) / 2j

    # C^2 = (E-^2 + E+^2 + 2 - P0)/4 and S^2 = (2 - P0 - E-^2 - E+^2)/4
    c_sq = ((e_minus_sq + e_plus_sq).real + 2.0 - p0) / 4.0
    s_sq = (2.0 - p0 - (e_minus_sq + e_plus_sq).real) / 4.0

    return Moments(
        mean_n=mean_n,
        var_n=var_n,
        e_minus=e_minus,
        p0=p0,
        c_mean=c_mean,
        s_mean=s_mean,
        c_var=max(c_sq - c_mean.real**2, 0.0),
        s_var=max(s_sq - s_mean.real**2, 0.0),
    )


def overlap(a, b):
    """
    <a|b>, zero padding the shorter vector
    """
    dim = max(a.dim, b.dim)
    left = a.padded(dim).amplitudes
    right = b.padded(dim).amplitudes
    return csum(np.conj(left) * right)


def _divide(amplitudes, divisor):
    # real and imaginary parts divided separately, as real divisions
    out = np.empty_like(amplitudes)
    out.real = amplitudes.real / divisor
    out.imag = amplitudes.imag / divisor
    return out


def canonicalize(state):
    """
    normalize the state and fix its global phase so the first nonzero
    amplitude is real and nonnegative
    """
    amplitudes = np.array(state.amplitudes, dtype=complex)
    nonzero = np.flatnonzero(amplitudes)

    if nonzero.size == 0:
        raise ZeroVectorError("cannot canonicalize the zero vector")

    # scale to max |c_n| = 1 first so the norm neither underflows nor overflows
    amplitudes = _divide(amplitudes, float(np.max(np.abs(amplitudes))))
    norm2 = fsum(amplitudes.real**2 + amplitudes.imag**2)
    amplitudes = _divide(amplitudes, math.sqrt(norm2))

    first = nonzero[0]
    leading = amplitudes[first]
    modulus = abs(leading)

    if leading.imag != 0 or leading.real < 0:
        rotation = complex(leading.real / modulus, -leading.imag / modulus)
        amplitudes = amplitudes * rotation

    amplitudes[first] = modulus
    return PureState(amplitudes)


def is_canonical(state, tol=NORM_TOL):
    nonzero = np.flatnonzero(state.amplitudes)

    if nonzero.size == 0:
        return False

    leading = state.amplitudes[nonzero[0]]
    return state.is_normalized(tol) and leading.imag == 0 and leading.real > 0
