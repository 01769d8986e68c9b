"""
phase noise and the number-phase uncertainty relations

For a normalized state the phase noise is 1 - |<E->|^2 and the relations
checked here are

    number-phase:   [(dN)^2 + 1/4] (1 - |<E->|^2) >= 1/4
    tighter form:   [(dN)^2 + 1/4] (1 - |<E->|^2) >= 1/4 + <P0> (dN)^2 / 2
    cosine / sine:  (dN)^2 (dC)^2 >= |<S>|^2 / 4
                    (dN)^2 (dS)^2 >= |<C>|^2 / 4

every value in a report comes from a single Moments evaluation.
"""

from dataclasses import dataclass

from phasenoise import logger
from phasenoise.errors import PhaseNoiseError, UnknownFamilyError
from phasenoise.factories import ALIASES, StateSpec, realize
from phasenoise.fock import moments
from phasenoise.utils import ordered_map
from phasenoise.witness import witness_from_moments

SLACK_TOL = 1e-10


@dataclass(frozen=True)
class NoiseReport:
    moments: object
    phase_noise: float
    lhs_eq8: float
    rhs_eq8: float
    rhs_eq7: float
    slack_eq8: float
    slack_eq7: float
    cs_slacks: tuple


@dataclass(frozen=True)
class SweepPoint:
    parameter: object
    spec: StateSpec
    report: NoiseReport = None
    witness: object = None
    error: str = None

    @property
    def ok(self):
        return self.error is None


def phase_noise(state):
    """
    1 - |<E->|^2 of a normalized state, in [0, 1]

    raises:
        NormError when the state is not normalized
    """
    return 1.0 - abs(moments(state).e_minus) ** 2


def report_from_moments(state_moments):
    var_n = state_moments.var_n
    noise = 1.0 - abs(state_moments.e_minus) ** 2

    lhs = (var_n + 0.25) * noise
    rhs_eq8 = 0.25
    rhs_eq7 = 0.25 + state_moments.p0 * var_n / 2.0

    return NoiseReport(
        moments=state_moments,
        phase_noise=noise,
        lhs_eq8=lhs,
        rhs_eq8=rhs_eq8,
        rhs_eq7=rhs_eq7,
        slack_eq8=lhs - rhs_eq8,
        slack_eq7=lhs - rhs_eq7,
        cs_slacks=(
            var_n * state_moments.c_var - abs(state_moments.s_mean) ** 2 / 4.0,
            var_n * state_moments.s_var - abs(state_moments.c_mean) ** 2 / 4.0,
        ),
    )


def report(state):
    """
    moments, phase noise and the uncertainty relation slacks of a state

    raises:
        NormError when the state is not normalized
    """
    return report_from_moments(moments(state))


def _sweep_point(spec, parameter, defaults):
    try:
        state_moments = moments(realize(spec, defaults))
    except PhaseNoiseError as e:
        logger.warning(f"sweep point {spec.to_string()} failed: {e}")
        return SweepPoint(parameter=parameter, spec=spec, error=str(e))

    return SweepPoint(
        parameter=parameter,
        spec=spec,
        report=report_from_moments(state_moments),
        witness=witness_from_moments(state_moments.mean_n, state_moments.e_minus),
    )


def sweep(family, parameter, values, params=None, defaults=None, workers=None):
    """
    report on every state of a family as one parameter runs over `values`

    parameters:
        family(str): state family name or alias
        parameter(str): the family parameter being swept
        values(list): parameter values, evaluated in ascending order
        params(dict): fixed values for the other parameters
        defaults(dict): "tail_tol" / "max_dim" passed on to realize
        workers(int): number of worker processes, defaults to the configured
                      PHASENOISE_WORKERS

    returns:
        a list of SweepPoint, one per value. A point whose state cannot be
        realized carries the error message instead of a report.
    """
    name = ALIASES.get(str(family).lower())
    if name is None:
        raise UnknownFamilyError(f'unknown state family "{family}"')

    values = sorted(values)
    if not values:
        raise ValueError("a sweep needs at least one parameter value")

    base = StateSpec(name, dict(params or {}))
    tasks = [(base.with_param(parameter, value), value, defaults) for value in values]

    logger.info(
        f"sweeping {name} over {len(values)} values of {parameter} "
        f"({values[0]} .. {values[-1]})"
    )
    return ordered_map(_sweep_point, tasks, workers=workers)
