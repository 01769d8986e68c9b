"""
pure states of least phase noise at a fixed mean photon number

The search maximizes <E-> = sum_n c_n c_{n+1} over real unit vectors with
sum_n n c_n^2 = target_n. Restricting to real nonnegative amplitudes loses
nothing: replacing every amplitude by its modulus keeps the number
distribution and can only increase |sum_n conj(c_n) c_{n+1}|.

With a multiplier mu for the photon number constraint the stationary points
are eigenvectors of the symmetric tridiagonal matrix

    T(mu) = diag(-mu n) + (E- + E+) / 2

and the optimum is the top (Perron) eigenvector, whose entries are all
positive. <N>(mu) along the top eigenvector decreases monotonically from
dim - 1 (mu -> -inf) through (dim - 1) / 2 (mu = 0) to 0 (mu -> +inf), so mu
is found by bisection.
"""

import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.linalg import eigh_tridiagonal

from phasenoise import logger
from phasenoise.config import CONFIG
from phasenoise.errors import (
    BisectionFailure,
    ConvergenceFailure,
    DegenerateExtremalWarning,
    DomainError,
    PhaseNoiseError,
    TruncationSuspectWarning,
)
from phasenoise.factories import number_state
from phasenoise.fock import PureState, canonicalize
from phasenoise.noise import phase_noise
from phasenoise.statefile import save_state, write_document
from phasenoise.utils import fsum, ordered_map

MIN_TOL = 1e-12
CONSTRAINT_LIMIT = 1e-8
DEGENERACY_GAP = 1e-12
TRUNCATION_SUSPECT = 1e-8
MAX_BRACKET_DOUBLINGS = 1100


@dataclass(frozen=True)
class ExtremalResult:
    target_n: float
    mu: float
    state: PureState
    phase_noise: float
    eigen_residual: float
    constraint_residual: float
    iterations: int
    trace: tuple = field(default=(), repr=False, compare=False)

    @property
    def scaled_noise(self):
        """
        phase_noise * target_n^2, which levels off where the noise falls as
        1 / <N>^2
        """
        return self.phase_noise * self.target_n**2


@dataclass(frozen=True)
class _Eigenpair:
    mu: float
    value: float
    vector: np.ndarray
    gap: float
    mean_n: float


def _top_eigenpair(mu, dim):
    levels = np.arange(dim, dtype=float)
    diagonal = -mu * levels
    off_diagonal = np.full(dim - 1, 0.5)

    values, vectors = eigh_tridiagonal(
        diagonal,
        off_diagonal,
        select="i",
        select_range=(dim - 2, dim - 1),
    )

    vector = vectors[:, -1]
    # fix the sign, the Perron vector is entrywise positive
    if fsum(vector) < 0:
        vector = -vector

    vector = np.abs(vector)
    vector = vector / math.sqrt(fsum(vector**2))

    return _Eigenpair(
        mu=mu,
        value=float(values[-1]),
        vector=vector,
        gap=float(values[-1] - values[0]),
        mean_n=fsum(levels * vector**2),
    )


def eigen_residual(pair):
    """
    max norm of T(mu) v - lambda v
    """
    vector = pair.vector
    product = -pair.mu * np.arange(vector.size, dtype=float) * vector
    product[:-1] += 0.5 * vector[1:]
    product[1:] += 0.5 * vector[:-1]
    return float(np.max(np.abs(product - pair.value * vector)))


def _bracket(target_n, dim, mean_at_zero):
    """
    find mu_lo < mu_hi with <N>(mu_lo) >= target_n >= <N>(mu_hi)
    """
    if target_n < mean_at_zero:
        lo = _top_eigenpair(0.0, dim)
        mu = 1.0
        for _ in range(MAX_BRACKET_DOUBLINGS):
            hi = _top_eigenpair(mu, dim)
            if hi.mean_n < target_n:
                return lo, hi
            lo = hi
            mu *= 2
    else:
        hi = _top_eigenpair(0.0, dim)
        mu = -1.0
        for _ in range(MAX_BRACKET_DOUBLINGS):
            lo = _top_eigenpair(mu, dim)
            if lo.mean_n > target_n:
                return lo, hi
            hi = lo
            mu *= 2

    raise BisectionFailure(
        f"unable to bracket the multiplier for target <N> = {target_n!r} "
        f"at dim {dim}",
        achievable=(0, dim - 1),
    )


def _fixed_state(target_n, level, dim, mu):
    state = number_state(level, dim)
    return ExtremalResult(
        target_n=target_n,
        mu=mu,
        state=state,
        phase_noise=phase_noise(state),
        eigen_residual=0.0,
        constraint_residual=0.0,
        iterations=0,
    )


def minimize_phase_noise(target_n, dim, tol=None, max_bisections=None):
    """
    the real nonnegative pure state on `dim` Fock levels with the least
    phase noise at mean photon number `target_n`

    parameters:
        target_n(float): the mean photon number, within [0, dim - 1]
        dim(int): number of Fock levels
        tol(float): relative tolerance on <N>, the search stops once
            |<N> - target| <= min(tol max(1, target), 1e-8)
        max_bisections(int): bisection steps before giving up

    returns:
        an ExtremalResult

    raises:
        BisectionFailure when the target is outside the achievable range,
        ConvergenceFailure when the bisection does not meet `tol`
    """
    if tol is None:
        tol = CONFIG.float("PHASENOISE_EXTREMAL_TOL")

    if max_bisections is None:
        max_bisections = CONFIG.int("PHASENOISE_EXTREMAL_MAX_BISECTIONS")

    if not tol >= MIN_TOL:
        raise DomainError(f"tol must be at least {MIN_TOL:.0e}, got {tol!r}")

    if dim < 1:
        raise DomainError(f"dim must be a positive integer, got {dim}")

    max_dim = CONFIG.int("PHASENOISE_EXTREMAL_MAX_DIM")
    if dim > max_dim:
        raise DomainError(
            f"dim {dim} exceeds the extremal search limit {max_dim}"
        )

    target_n = float(target_n)
    if not (0 <= target_n <= dim - 1):
        raise BisectionFailure(
            f"target <N> = {target_n!r} cannot be reached on {dim} Fock levels",
            achievable=(0, dim - 1),
        )

    if target_n == 0:
        return _fixed_state(target_n, 0, dim, math.inf)

    if target_n == dim - 1:
        return _fixed_state(target_n, dim - 1, dim, -math.inf)

    threshold = min(tol * max(1.0, target_n), CONSTRAINT_LIMIT)
    center = _top_eigenpair(0.0, dim)

    if abs(center.mean_n - target_n) <= threshold:
        best, iterations, trace = center, 0, ((0.0, center.mean_n),)
    else:
        best, iterations, trace = _bisect(
            target_n, dim, center.mean_n, threshold, max_bisections
        )

    if best.gap < DEGENERACY_GAP:
        warnings.warn(
            f"top eigenvalue at mu = {best.mu!r} is degenerate "
            f"(gap {best.gap:.3e}), returning the solver's eigenvector",
            DegenerateExtremalWarning,
            stacklevel=2,
        )

    if best.vector[-1] > TRUNCATION_SUSPECT:
        warnings.warn(
            f"extremal state at <N> = {target_n!r} has top amplitude "
            f"{best.vector[-1]:.3e}, consider a larger dim than {dim}",
            TruncationSuspectWarning,
            stacklevel=2,
        )

    state = canonicalize(PureState(best.vector))
    levels = np.arange(dim, dtype=float)

    return ExtremalResult(
        target_n=target_n,
        mu=best.mu,
        state=state,
        phase_noise=phase_noise(state),
        eigen_residual=eigen_residual(best),
        constraint_residual=abs(fsum(levels * state.probabilities) - target_n),
        iterations=iterations,
        trace=trace,
    )


def _bisect(target_n, dim, mean_at_zero, threshold, max_bisections):
    lo, hi = _bracket(target_n, dim, mean_at_zero)
    trace = [(lo.mu, lo.mean_n), (hi.mu, hi.mean_n)]

    for iteration in range(1, max_bisections + 1):
        mu = (lo.mu + hi.mu) / 2

        if mu in (lo.mu, hi.mu):
            break

        mid = _top_eigenpair(mu, dim)
        trace.append((mu, mid.mean_n))

        # eigenvector round-off moves <N> by a few ulps per level
        slack = 1e-13 * dim
        if not (lo.mean_n + slack >= mid.mean_n >= hi.mean_n - slack):
            raise ConvergenceFailure(
                f"<N>(mu) is not monotone around mu = {mu!r}: "
                f"{lo.mean_n!r}, {mid.mean_n!r}, {hi.mean_n!r}"
            )

        if abs(mid.mean_n - target_n) <= threshold:
            logger.debug(
                f"<N> = {target_n!r} reached at mu = {mu!r} after {iteration} bisections"
            )
            return mid, iteration, tuple(trace)

        if mid.mean_n > target_n:
            lo = mid
        else:
            hi = mid

    raise ConvergenceFailure(
        f"bisection for <N> = {target_n!r} at dim {dim} did not converge, "
        f"bracket [{lo.mu!r}, {hi.mu!r}] gives <N> in "
        f"[{hi.mean_n!r}, {lo.mean_n!r}]"
    )


def _sweep_target(target_n, dim, tol, max_bisections):
    try:
        return minimize_phase_noise(target_n, dim, tol, max_bisections)
    except PhaseNoiseError as e:
        return e


def sweep_extremal(targets, dim, tol=None, max_bisections=None, workers=None):
    """
    minimize_phase_noise at every target, in the given ascending order

    raises:
        the first failure in target order
    """
    targets = [float(target) for target in targets]

    if not targets:
        raise DomainError("no targets to sweep")

    if any(b < a for a, b in zip(targets, targets[1:])):
        raise DomainError("extremal targets must be in ascending order")

    logger.info(
        f"searching extremal states for {len(targets)} targets on {dim} levels"
    )
    results = ordered_map(
        _sweep_target,
        [(target, dim, tol, max_bisections) for target in targets],
        workers=workers,
    )

    for result in results:
        if isinstance(result, PhaseNoiseError):
            raise result

    return results


def finite_or_none(value):
    """
    `value`, or None for the infinite multipliers of the number state
    endpoints
    """
    return value if math.isfinite(value) else None


def extremal_to_document(result):
    return {
        "target_n": result.target_n,
        "mu": finite_or_none(result.mu),
        "dim": result.state.dim,
        "phase_noise": result.phase_noise,
        "scaled_noise": result.scaled_noise,
        "eigen_residual": result.eigen_residual,
        "constraint_residual": result.constraint_residual,
        "iterations": result.iterations,
    }


def sidecar_path(filepath):
    filepath = Path(filepath)
    return filepath.with_name(f"{filepath.name}.extremal.json")


def save_extremal(result, filepath, precision=17):
    """
    write the extremal state as a state document at `filepath` and its search
    record next to it as `<filepath>.extremal.json`
    """
    save_state(result.state, filepath, precision=precision)
    write_document(
        extremal_to_document(result), sidecar_path(filepath), precision=precision
    )
