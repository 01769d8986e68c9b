"""
self check of the uncertainty identities and inequalities on random states

random pure states are drawn with complex standard normal amplitudes on a
random number of levels in [2, 64] and normalized. Each check records the
largest violation it sees over all trials along with the trial responsible
for it (lowest index on ties), so reports do not depend on the number of
workers.
"""

import math
from dataclasses import dataclass

from phasenoise import logger
from phasenoise.config import CONFIG
from phasenoise.errors import DomainError, PhaseNoiseError
from phasenoise.factories import number_state
from phasenoise.fock import PureState, canonicalize, moments
from phasenoise.noise import report_from_moments
from phasenoise.utils import generator, ordered_map
from phasenoise.witness import (
    chain_slacks,
    random_ensemble,
    witness,
)

STATE_STREAM = 1
ENSEMBLE_STREAM = 2

MIN_DIM = 2
MAX_DIM = 64
NUMBER_STATES = 51

IDENTITY_TOL = 1e-12
INEQUALITY_TOL = 1e-10

# check name -> (tolerance, description)
CHECKS = {
    "hermiticity": (
        IDENTITY_TOL,
        "imaginary parts of <C>, <S> and |<E->|^2 - <C>^2 - <S>^2",
    ),
    "variance_sum": (
        IDENTITY_TOL,
        "(dC)^2 + (dS)^2 + |<E->|^2 + <P0>/2 - 1",
    ),
    "cosine_sine_uncertainty": (
        INEQUALITY_TOL,
        "(dN)^2 (dC)^2 >= |<S>|^2/4 and (dN)^2 (dS)^2 >= |<C>|^2/4",
    ),
    "number_phase": (
        INEQUALITY_TOL,
        "[(dN)^2 + 1/4] (1 - |<E->|^2) >= 1/4",
    ),
    "tighter_number_phase": (
        INEQUALITY_TOL,
        "[(dN)^2 + 1/4] (1 - |<E->|^2) >= 1/4 + <P0> (dN)^2 / 2",
    ),
    "tighter_than_number_phase": (
        IDENTITY_TOL,
        "the <P0> bound is never weaker than the 1/4 bound",
    ),
    "number_state_equality": (
        IDENTITY_TOL,
        "number states meet the number-phase relation with equality",
    ),
    "coherent_bound": (
        INEQUALITY_TOL,
        "|<alpha|E-|alpha>| <= [1 + 1/(4|alpha|^2)]^(-1/2)",
    ),
    "mixture_bound": (
        INEQUALITY_TOL,
        "ensemble phase noise >= sum_k w_k / (1 + 4|alpha_k|^2)",
    ),
    "photon_number_bound": (
        INEQUALITY_TOL,
        "sum_k w_k / (1 + 4|alpha_k|^2) >= 1 / (1 + 4<N>)",
    ),
    "classical_bound": (
        INEQUALITY_TOL,
        "ensemble phase noise >= 1 / (4<N> + 1)",
    ),
}

STATE_CHECKS = (
    "hermiticity",
    "variance_sum",
    "cosine_sine_uncertainty",
    "number_phase",
    "tighter_number_phase",
    "tighter_than_number_phase",
)

ENSEMBLE_CHECKS = (
    "coherent_bound",
    "mixture_bound",
    "photon_number_bound",
    "classical_bound",
)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    description: str
    tolerance: float
    trials: int
    max_violation: float
    worst_index: int

    @property
    def passed(self):
        return self.max_violation <= self.tolerance


@dataclass(frozen=True)
class IdentityReport:
    seed: int
    trials: int
    ensemble_trials: int
    checks: tuple

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    def __getitem__(self, name):
        for check in self.checks:
            if check.name == name:
                return check

        raise KeyError(name)


def random_state(rng):
    """
    a normalized state with complex standard normal amplitudes on a random
    number of levels in [2, 64]
    """
    dim = int(rng.integers(MIN_DIM, MAX_DIM + 1))
    amplitudes = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return canonicalize(PureState(amplitudes))


def state_violations(state_moments, p0_sign=1):
    noise_report = report_from_moments(state_moments)
    c_mean = state_moments.c_mean
    s_mean = state_moments.s_mean
    e_minus_sq = abs(state_moments.e_minus) ** 2

    hermiticity = max(
        abs(c_mean.imag),
        abs(s_mean.imag),
        abs(e_minus_sq - c_mean.real**2 - s_mean.real**2),
    )
    variance_sum = abs(
        state_moments.c_var
        + state_moments.s_var
        + e_minus_sq
        + p0_sign * state_moments.p0 / 2
        - 1.0
    )

    return {
        "hermiticity": hermiticity,
        "variance_sum": variance_sum,
        "cosine_sine_uncertainty": max(0.0, -min(noise_report.cs_slacks)),
        "number_phase": max(0.0, -noise_report.slack_eq8),
        "tighter_number_phase": max(0.0, -noise_report.slack_eq7),
        "tighter_than_number_phase": max(
            0.0, noise_report.slack_eq7 - noise_report.slack_eq8
        ),
    }


def _state_trial(seed, index, p0_sign):
    rng = generator(seed, index, STATE_STREAM)
    return state_violations(moments(random_state(rng)), p0_sign)


def _ensemble_trial(seed, index, max_components, max_alpha):
    rng = generator(seed, index, ENSEMBLE_STREAM)
    ensemble = random_ensemble(rng, max_components, max_alpha)

    try:
        chain = chain_slacks(ensemble)
        report = witness(ensemble)
    except PhaseNoiseError as e:
        logger.warning(f"ensemble trial {index} failed: {e}")
        return {name: math.inf for name in ENSEMBLE_CHECKS}

    return {
        "coherent_bound": max(0.0, -chain.coherent_bound),
        "mixture_bound": max(0.0, -chain.mixture_bound),
        "photon_number_bound": max(0.0, -chain.photon_number_bound),
        "classical_bound": max(0.0, report.witness),
    }


def _reduce(names, results):
    worst = {name: (0.0, -1) for name in names}

    for index, violations in enumerate(results):
        for name in names:
            if violations[name] > worst[name][0]:
                worst[name] = (violations[name], index)

    return worst


def _check(name, trials, worst):
    tolerance, description = CHECKS[name]
    max_violation, index = worst
    return IdentityCheck(
        name=name,
        description=description,
        tolerance=tolerance,
        trials=trials,
        max_violation=max_violation,
        worst_index=index,
    )


def verify_identities(trials, seed, ensemble_trials=None, workers=None):
    """
    run the identity and inequality checks on `trials` random states,
    the number states |0> .. |50> and `ensemble_trials` random coherent
    ensembles

    parameters:
        trials(int): number of random pure states
        seed(int): master seed
        ensemble_trials(int): number of random ensembles, defaults to
                              one per hundred state trials (at least one)
        workers(int): worker processes, defaults to PHASENOISE_WORKERS

    returns:
        an IdentityReport
    """
    if trials < 1:
        raise DomainError(f"trials must be at least 1, got {trials}")

    if ensemble_trials is None:
        ensemble_trials = max(1, trials // 100)

    p0_sign = CONFIG["__PHASENOISE_VARIANCE_SUM_P0_SIGN"]
    if p0_sign is None:
        p0_sign = 1

    logger.info(
        f"checking identities on {trials} random states and "
        f"{ensemble_trials} random ensembles (seed {seed})"
    )

    state_results = ordered_map(
        _state_trial,
        [(seed, index, p0_sign) for index in range(trials)],
        workers=workers,
    )
    state_worst = _reduce(STATE_CHECKS, state_results)

    equality = (0.0, -1)
    for n in range(NUMBER_STATES):
        slack = abs(report_from_moments(moments(number_state(n))).slack_eq8)
        if slack > equality[0]:
            equality = (slack, n)

    max_components = CONFIG.int("PHASENOISE_MC_MAX_COMPONENTS")
    max_alpha = CONFIG.float("PHASENOISE_MC_MAX_ALPHA")
    ensemble_results = ordered_map(
        _ensemble_trial,
        [
            (seed, index, max_components, max_alpha)
            for index in range(ensemble_trials)
        ],
        workers=workers,
    )
    ensemble_worst = _reduce(ENSEMBLE_CHECKS, ensemble_results)

    checks = [_check(name, trials, state_worst[name]) for name in STATE_CHECKS]
    checks.append(_check("number_state_equality", NUMBER_STATES, equality))
    checks.extend(
        _check(name, ensemble_trials, ensemble_worst[name])
        for name in ENSEMBLE_CHECKS
    )

    report = IdentityReport(
        seed=seed,
        trials=trials,
        ensemble_trials=ensemble_trials,
        checks=tuple(checks),
    )

    for check in report.failures:
        logger.error(
            f"{check.name} violated by {check.max_violation:.3e} "
            f"(tolerance {check.tolerance:.0e}, trial {check.worst_index})"
        )

    return report


