"""
classical states, the classical lower bound on phase noise and the
nonclassicality witness built on it

A classical state is represented by a finite atomic P-function: a convex
combination sum_k w_k |alpha_k><alpha_k| of coherent states. Expectations are
the weighted sums of the coherent-state expectations, the mean photon number
sum_k w_k |alpha_k|^2 is exact and <alpha|E-|alpha> comes from the truncated
coherent series.

Every classical state obeys

    1 - |<E->|^2 >= 1 / (4 <N> + 1)

and a state that falls below the bound is nonclassical. The test is one
sided: satisfying the bound says nothing about classicality.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from phasenoise import logger
from phasenoise.config import CONFIG
from phasenoise.errors import (
    DomainError,
    EnsembleError,
    PhaseNoiseError,
    StateFileError,
)
from phasenoise.factories import coherent_state
from phasenoise.fock import PureState, expect_e_minus, moments
from phasenoise.statefile import read_document, write_document
from phasenoise.utils import csum, fsum, generator, ordered_map

WITNESS_TOL = 1e-10
WEIGHT_TOL = 1e-12
WEIGHT_LOAD_TOL = 1e-9

MC_STREAM = 0


@dataclass(frozen=True, eq=False)
class CoherentEnsemble:
    weights: tuple
    alphas: tuple

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        alphas = tuple(complex(a) for a in self.alphas)

        if len(weights) < 1:
            raise EnsembleError("an ensemble needs at least one component")

        if len(weights) != len(alphas):
            raise EnsembleError(
                f"{len(weights)} weights given for {len(alphas)} amplitudes"
            )

        for index, (weight, alpha) in enumerate(zip(weights, alphas)):
            if not math.isfinite(weight) or weight <= 0:
                raise EnsembleError(
                    f"component {index} has non-positive weight {weight!r}"
                )
            if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
                raise EnsembleError(f"component {index} has a non-finite alpha")

        total = math.fsum(weights)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise EnsembleError(
                f"weights sum to {total!r}, expected 1 within {WEIGHT_TOL:.0e}"
            )

        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "alphas", alphas)

    @classmethod
    def from_components(cls, components, normalize=True):
        """
        build an ensemble from (weight, alpha) pairs, rescaling the weights
        to sum to one when `normalize` is set
        """
        components = list(components)
        weights = [float(weight) for weight, _ in components]
        alphas = [complex(alpha) for _, alpha in components]

        if normalize and weights:
            total = math.fsum(weights)
            if total <= 0:
                raise EnsembleError("ensemble weights must have a positive sum")
            weights = [weight / total for weight in weights]

        return cls(tuple(weights), tuple(alphas))

    @property
    def components(self):
        return list(zip(self.weights, self.alphas))

    @property
    def mean_n(self):
        return fsum([w * abs(a) ** 2 for w, a in self.components])

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class WitnessReport:
    mean_n: float
    e_minus: complex
    phase_noise: float
    classical_bound: float
    witness: float
    nonclassical: bool


@dataclass(frozen=True)
class ChainSlacks:
    """
    slacks of the steps leading to the classical bound, all >= 0 in exact
    arithmetic:

        coherent_bound:  min_k f(alpha_k) - |<alpha_k|E-|alpha_k>|
        mixture_bound:   phase noise - sum_k w_k (1 - f(alpha_k)^2)
        photon_number_bound:
                         sum_k w_k / (1 + 4|alpha_k|^2) - 1 / (1 + 4<N>)
    """

    coherent_bound: float
    mixture_bound: float
    photon_number_bound: float

    @property
    def minimum(self):
        return min(
            self.coherent_bound, self.mixture_bound, self.photon_number_bound
        )


def _defaults(tail_tol, max_dim):
    if tail_tol is None:
        tail_tol = CONFIG.float("PHASENOISE_TAIL_TOL")

    if max_dim is None:
        max_dim = CONFIG.int("PHASENOISE_MAX_DIM")

    return tail_tol, max_dim


def classical_bound(mean_n):
    """
    1 / (4 <N> + 1), the least phase noise a classical state with mean
    photon number <N> can have
    """
    if not mean_n >= 0:
        raise DomainError(f"mean photon number must be >= 0, got {mean_n!r}")

    return 1.0 / (4.0 * mean_n + 1.0)


def coherent_f(alpha):
    """
    upper bound on |<alpha|E-|alpha>| implied by the number-phase relation
    for (Delta N)^2 = |alpha|^2: [1 + 1/(4|alpha|^2)]^(-1/2), 0 at alpha = 0
    """
    mean_n = abs(complex(alpha)) ** 2

    if mean_n == 0:
        return 0.0

    return math.sqrt(4.0 * mean_n / (4.0 * mean_n + 1.0))


def component_bound(alpha):
    """
    1 - f(alpha)^2 = 1 / (1 + 4|alpha|^2)
    """
    return 1.0 / (1.0 + 4.0 * abs(complex(alpha)) ** 2)


@lru_cache(maxsize=4096)
def coherent_e_minus(alpha, tail_tol, max_dim):
    return expect_e_minus(coherent_state(alpha, tail_tol, max_dim))


def ensemble_moments(ensemble, tail_tol=None, max_dim=None):
    """
    (<N>, <E->) of a coherent ensemble
    """
    tail_tol, max_dim = _defaults(tail_tol, max_dim)

    e_minus = csum(
        [
            weight * coherent_e_minus(alpha, tail_tol, max_dim)
            for weight, alpha in ensemble.components
        ]
    )
    return ensemble.mean_n, e_minus


def witness_from_moments(mean_n, e_minus):
    phase_noise = 1.0 - abs(e_minus) ** 2
    bound = classical_bound(mean_n)
    value = bound - phase_noise

    return WitnessReport(
        mean_n=mean_n,
        e_minus=e_minus,
        phase_noise=phase_noise,
        classical_bound=bound,
        witness=value,
        nonclassical=value > WITNESS_TOL,
    )


def witness(subject, tail_tol=None, max_dim=None):
    """
    evaluate the classical phase-noise bound on a pure state or a coherent
    ensemble. `nonclassical` is only ever a certificate of nonclassicality.
    """
    if isinstance(subject, CoherentEnsemble):
        mean_n, e_minus = ensemble_moments(subject, tail_tol, max_dim)
    elif isinstance(subject, PureState):
        state_moments = moments(subject)
        mean_n, e_minus = state_moments.mean_n, state_moments.e_minus
    else:
        raise TypeError(
            f"expected a PureState or CoherentEnsemble, got {type(subject).__name__}"
        )

    return witness_from_moments(mean_n, e_minus)


def chain_slacks(ensemble, tail_tol=None, max_dim=None):
    tail_tol, max_dim = _defaults(tail_tol, max_dim)
    mean_n, e_minus = ensemble_moments(ensemble, tail_tol, max_dim)

    coherent = min(
        coherent_f(alpha) - abs(coherent_e_minus(alpha, tail_tol, max_dim))
        for alpha in ensemble.alphas
    )
    mixture = fsum(
        [weight * component_bound(alpha) for weight, alpha in ensemble.components]
    )

    return ChainSlacks(
        coherent_bound=coherent,
        mixture_bound=(1.0 - abs(e_minus) ** 2) - mixture,
        photon_number_bound=mixture - classical_bound(mean_n),
    )


def convex_mix(a, b, t):
    """
    the ensemble t a + (1 - t) b
    """
    if not 0 < t < 1:
        raise DomainError(f"mixing parameter must lie in (0, 1), got {t!r}")

    return CoherentEnsemble.from_components(
        [(t * w, alpha) for w, alpha in a.components]
        + [((1 - t) * w, alpha) for w, alpha in b.components]
    )


def random_ensemble(rng, max_components, max_alpha):
    """
    draw an ensemble with a uniform number of components in
    [1, max_components], flat Dirichlet weights and amplitudes uniform in
    the disk |alpha| <= max_alpha
    """
    count = int(rng.integers(1, max_components + 1))
    weights = rng.dirichlet(np.ones(count))
    radii = max_alpha * np.sqrt(rng.random(count))
    angles = 2 * math.pi * rng.random(count)
    alphas = radii * np.exp(1j * angles)

    return CoherentEnsemble.from_components(zip(weights, alphas))


@dataclass(frozen=True)
class MCSample:
    index: int
    components: int
    mean_n: float
    phase_noise: float
    classical_bound: float
    margin: float
    chain_minimum: float
    error: str = None


@dataclass(frozen=True)
class MCSummary:
    seed: int
    samples: int
    max_components: int
    max_alpha: float
    violations: int
    chain_violations: int
    failures: int
    min_margin: float
    worst_index: int
    worst_case: CoherentEnsemble
    records: tuple = field(repr=False)


def _mc_sample(seed, index, max_components, max_alpha, tail_tol, max_dim):
    rng = generator(seed, index, MC_STREAM)
    ensemble = random_ensemble(rng, max_components, max_alpha)

    try:
        report = witness(ensemble, tail_tol, max_dim)
        chain = chain_slacks(ensemble, tail_tol, max_dim)
    except PhaseNoiseError as e:
        logger.warning(f"sample {index} failed: {e}")
        return MCSample(
            index=index,
            components=len(ensemble),
            mean_n=ensemble.mean_n,
            phase_noise=math.nan,
            classical_bound=math.nan,
            margin=math.nan,
            chain_minimum=math.nan,
            error=str(e),
        ), ensemble

    return MCSample(
        index=index,
        components=len(ensemble),
        mean_n=report.mean_n,
        phase_noise=report.phase_noise,
        classical_bound=report.classical_bound,
        margin=report.phase_noise - report.classical_bound,
        chain_minimum=chain.minimum,
    ), ensemble


def mc_verify_classical(
    seed,
    samples,
    max_components=None,
    max_alpha=None,
    tail_tol=None,
    max_dim=None,
    workers=None,
):
    """
    draw `samples` random classical ensembles and check the classical bound
    on each of them

    every sample draws from its own counter-based stream derived from
    (seed, sample index) and the reduction runs in sample order with ties
    going to the lowest index, so the summary is identical for any number of
    workers.
    """
    if samples < 1:
        raise DomainError(f"samples must be at least 1, got {samples}")

    if max_components is None:
        max_components = CONFIG.int("PHASENOISE_MC_MAX_COMPONENTS")

    if max_alpha is None:
        max_alpha = CONFIG.float("PHASENOISE_MC_MAX_ALPHA")

    if max_components < 1:
        raise DomainError(f"max_components must be >= 1, got {max_components}")

    if not max_alpha > 0:
        raise DomainError(f"max_alpha must be positive, got {max_alpha!r}")

    tail_tol, max_dim = _defaults(tail_tol, max_dim)

    logger.info(
        f"checking the classical bound on {samples} random ensembles "
        f"(seed {seed}, <= {max_components} components, |alpha| <= {max_alpha})"
    )

    results = ordered_map(
        _mc_sample,
        [
            (seed, index, max_components, max_alpha, tail_tol, max_dim)
            for index in range(samples)
        ],
        workers=workers,
    )

    violations = 0
    chain_violations = 0
    failures = 0
    worst = None

    for record, ensemble in results:
        if record.error is not None:
            failures += 1
            continue

        if -record.margin > WITNESS_TOL:
            violations += 1
            logger.error(
                f"sample {record.index} violates the classical bound by "
                f"{-record.margin:.3e}"
            )

        if record.chain_minimum < -WITNESS_TOL:
            chain_violations += 1

        if worst is None or record.margin < worst[0].margin:
            worst = (record, ensemble)

    if worst is None:
        worst_record, worst_case = None, None
    else:
        worst_record, worst_case = worst

    return MCSummary(
        seed=seed,
        samples=samples,
        max_components=max_components,
        max_alpha=max_alpha,
        violations=violations,
        chain_violations=chain_violations,
        failures=failures,
        min_margin=math.nan if worst_record is None else worst_record.margin,
        worst_index=-1 if worst_record is None else worst_record.index,
        worst_case=worst_case,
        records=tuple(record for record, _ in results),
    )


def ensemble_to_document(ensemble):
    return {
        "components": [
            {"weight": weight, "alpha": [alpha.real, alpha.imag]}
            for weight, alpha in ensemble.components
        ]
    }


def ensemble_from_document(document, source="<document>"):
    if not isinstance(document, dict) or not isinstance(
        document.get("components"), list
    ):
        raise StateFileError(f"{source}: expected an object with a components list")

    components = []
    for index, component in enumerate(document["components"]):
        try:
            weight = float(component["weight"])
            re, im = component["alpha"]
            components.append((weight, complex(float(re), float(im))))
        except (KeyError, TypeError, ValueError):
            raise StateFileError(
                f'{source}: component {index} needs "weight" and an "alpha" '
                "[re, im] pair"
            )

    total = math.fsum(weight for weight, _ in components)
    if abs(total - 1.0) > WEIGHT_LOAD_TOL:
        raise StateFileError(
            f"{source}: weights sum to {total!r}, expected 1 within "
            f"{WEIGHT_LOAD_TOL:.0e}"
        )

    try:
        return CoherentEnsemble.from_components(components)
    except EnsembleError as e:
        raise StateFileError(f"{source}: {e}")


def load_ensemble(filepath):
    document = read_document(filepath, kind="ensemble")
    return ensemble_from_document(document, source=str(filepath))


def save_ensemble(ensemble, filepath, precision=17):
    write_document(ensemble_to_document(ensemble), filepath, precision=precision)
