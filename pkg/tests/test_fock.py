import cmath
import math
import warnings

import numpy as np
import pytest
import pytest_check as check
from hypothesis import given, settings
from hypothesis import strategies as st

from phasenoise.errors import NormError, TruncationLossWarning, ZeroVectorError
from phasenoise.factories import number_state, truncated_phase_state
from phasenoise.fock import (
    PureState,
    apply_e_minus,
    apply_e_plus,
    canonicalize,
    e_plus_truncation_loss,
    expect_e_minus,
    is_canonical,
    moments,
    overlap,
)
from phasenoise.utils import generator

SQRT_HALF = 1 / math.sqrt(2)

amplitude = st.complex_numbers(
    max_magnitude=10, allow_nan=False, allow_infinity=False
)
amplitude_lists = st.lists(amplitude, min_size=1, max_size=40).filter(
    lambda values: sum(abs(v) ** 2 for v in values) > 1e-6
)


def random_states(count, seed=1234):
    for index in range(count):
        rng = generator(seed, index)
        dim = int(rng.integers(2, 65))
        yield canonicalize(
            PureState(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
        )


def test_pure_state_is_immutable():
    state = number_state(1, 3)

    with pytest.raises(ValueError):
        state.amplitudes[0] = 1.0


def test_pure_state_rejects_bad_amplitudes():
    with pytest.raises(ValueError):
        PureState([])

    with pytest.raises(ValueError):
        PureState([[1.0, 0.0]])

    with pytest.raises(ValueError):
        PureState([1.0, math.nan])


def test_pure_state_padded_keeps_amplitudes():
    state = canonicalize(PureState([3, 4]))
    padded = state.padded(5)

    check.equal(padded.dim, 5)
    check.equal(list(padded.amplitudes[:2]), list(state.amplitudes))
    check.equal(list(padded.amplitudes[2:]), [0, 0, 0])


def test_apply_e_plus_raises_level():
    check.equal(list(apply_e_plus(number_state(0, 4)).amplitudes), [0, 1, 0, 0])

    superposition = PureState([SQRT_HALF, SQRT_HALF, 0, 0])
    raised = apply_e_plus(superposition)
    check.equal(list(raised.amplitudes), [0, SQRT_HALF, SQRT_HALF, 0])


def test_apply_e_plus_reports_truncation_loss():
    top = number_state(3, 4)
    check.equal(e_plus_truncation_loss(top), 1.0)

    with pytest.warns(TruncationLossWarning):
        raised = apply_e_plus(top)

    check.equal(raised.norm2, 0.0)


def test_apply_e_plus_is_quiet_without_loss():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        apply_e_plus(number_state(2, 4))


def test_apply_e_minus_lowers_level():
    check.equal(apply_e_minus(number_state(0, 3)).norm2, 0.0)
    check.equal(list(apply_e_minus(number_state(5)).amplitudes)[4], 1)

    lowered = apply_e_minus(PureState([SQRT_HALF, SQRT_HALF]))
    check.equal(list(lowered.amplitudes), [SQRT_HALF, 0])
    check.almost_equal(lowered.norm2, 0.5, abs=1e-15)


def test_e_minus_undoes_e_plus_without_truncation():
    for state in random_states(50):
        state = state.padded(state.dim + 1)
        restored = apply_e_minus(apply_e_plus(state))
        assert np.array_equal(restored.amplitudes, state.amplitudes)


def test_e_plus_e_minus_removes_vacuum():
    for state in random_states(50):
        state = state.padded(state.dim + 1)
        projected = apply_e_plus(apply_e_minus(state))
        check.almost_equal(projected.norm2, 1 - state.probabilities[0], abs=1e-14)


def test_moments_of_number_state():
    state_moments = moments(number_state(5))

    check.equal(state_moments.mean_n, 5)
    check.equal(state_moments.var_n, 0)
    check.equal(state_moments.e_minus, 0)
    check.equal(state_moments.p0, 0)
    check.almost_equal(state_moments.c_var, 0.5, abs=1e-15)
    check.almost_equal(state_moments.s_var, 0.5, abs=1e-15)


def test_moments_of_truncated_phase_state():
    state_moments = moments(truncated_phase_state(0.0, 4))

    check.almost_equal(state_moments.var_n, 2, abs=1e-13)
    check.almost_equal(state_moments.abs_e_minus, 0.8, abs=1e-15)
    check.almost_equal(state_moments.p0, 0.2, abs=1e-15)


def test_moments_of_two_level_superposition():
    state_moments = moments(PureState([SQRT_HALF, SQRT_HALF]))

    check.almost_equal(state_moments.e_minus, 0.5, abs=1e-15)
    check.almost_equal(state_moments.p0, 0.5, abs=1e-15)
    check.almost_equal(state_moments.mean_n, 0.5, abs=1e-15)


def test_moments_requires_normalized_state():
    with pytest.raises(NormError):
        moments(PureState([1.0, 1.0]))


def test_moments_identities_on_random_states():
    for state in random_states(1000):
        m = moments(state)

        check.less_equal(abs(m.c_mean.imag), 1e-12)
        check.less_equal(abs(m.s_mean.imag), 1e-12)
        check.less_equal(abs(m.e_minus - (m.c_mean + 1j * m.s_mean)), 1e-12)
        check.less_equal(
            abs(m.c_var + m.s_var + abs(m.e_minus) ** 2 + m.p0 / 2 - 1), 1e-12
        )
        check.less_equal(m.abs_e_minus, 1.0)


def test_moments_invariant_under_global_phase():
    for state in random_states(20):
        rotated = PureState(state.amplitudes * cmath.exp(0.7j))
        a, b = moments(state), moments(rotated)

        check.almost_equal(a.mean_n, b.mean_n, abs=1e-13)
        check.almost_equal(a.var_n, b.var_n, abs=1e-12)
        check.almost_equal(abs(a.e_minus - b.e_minus), 0, abs=1e-14)
        check.almost_equal(a.c_var, b.c_var, abs=1e-13)


def test_overlap():
    check.equal(overlap(number_state(2), number_state(2)), 1)
    check.equal(overlap(number_state(1), number_state(2)), 0)

    for state in random_states(10):
        check.almost_equal(overlap(state, state), 1, abs=1e-14)


def test_overlap_pads_shorter_state():
    check.equal(overlap(number_state(1, 2), number_state(1, 6)), 1)


def test_canonicalize_fixes_phase_and_norm():
    state = canonicalize(PureState([0, 0, 0, 2j]))
    check.equal(list(state.amplitudes), [0, 0, 0, 1])

    state = canonicalize(PureState([3, 4]))
    check.almost_equal(state.amplitudes[0], 0.6, abs=1e-15)
    check.almost_equal(state.amplitudes[1], 0.8, abs=1e-15)


def test_canonicalize_extreme_magnitudes():
    for scale in (1e-200, 1e-310, 1e200):
        state = canonicalize(PureState([scale, 1j * scale]))

        check.is_true(is_canonical(state), f"scale {scale}")
        check.almost_equal(state.amplitudes[0], 1 / math.sqrt(2), abs=1e-15)
        check.almost_equal(state.amplitudes[1], 1j / math.sqrt(2), abs=1e-15)


def test_canonicalize_rejects_zero_vector():
    with pytest.raises(ZeroVectorError):
        canonicalize(PureState([0, 0, 0]))


def test_canonicalize_removes_global_phase():
    for state in random_states(20):
        rotated = canonicalize(PureState(state.amplitudes * cmath.exp(-2.1j)))
        assert np.max(np.abs(rotated.amplitudes - state.amplitudes)) < 1e-15


@settings(max_examples=200, deadline=None)
@given(amplitude_lists)
def test_canonicalize_output_is_canonical(values):
    state = canonicalize(PureState(values))

    assert is_canonical(state)
    assert expect_e_minus(state) == moments(state).e_minus
