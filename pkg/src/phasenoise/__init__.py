# -*- coding: utf-8 -*-
__version__ = "0.1.0"

from phasenoise.errors import (
    BisectionFailure,
    ConvergenceFailure,
    PhaseNoiseError,
    PhaseNoiseWarning,
)
from phasenoise.extremal import (
    ExtremalResult,
    minimize_phase_noise,
    sweep_extremal,
)
from phasenoise.factories import (
    StateSpec,
    coherent_state,
    number_state,
    parse_spec,
    realize,
    triangle_state,
    truncated_phase_state,
)
from phasenoise.fock import Moments, PureState, moments
from phasenoise.noise import NoiseReport, phase_noise, report, sweep
from phasenoise.witness import (
    CoherentEnsemble,
    WitnessReport,
    classical_bound,
    mc_verify_classical,
    witness,
)
