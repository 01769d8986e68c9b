import math

import pytest
import pytest_check as check
from hypothesis import given, settings
from hypothesis import strategies as st

from phasenoise.errors import NormError, UnknownFamilyError
from phasenoise.factories import (
    coherent_state,
    number_state,
    truncated_phase_state,
)
from phasenoise.fock import PureState, canonicalize, moments
from phasenoise.noise import SLACK_TOL, phase_noise, report, sweep
from phasenoise.utils import generator
from phasenoise.verify import random_state

amplitude_lists = st.lists(
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=64,
).filter(lambda values: sum(abs(v) ** 2 for v in values) > 1e-6)


def test_phase_noise_examples():
    check.equal(phase_noise(number_state(7)), 1)
    check.almost_equal(
        phase_noise(truncated_phase_state(0.0, 4)), 0.36, abs=1e-15
    )
    check.almost_equal(
        phase_noise(PureState([1 / math.sqrt(2), 1 / math.sqrt(2)])),
        0.75,
        abs=1e-15,
    )


def test_phase_noise_requires_normalized_state():
    with pytest.raises(NormError):
        phase_noise(PureState([1.0, 1.0]))


def test_phase_noise_is_consistent_with_moments():
    for index in range(100):
        state = random_state(generator(5, index))
        assert phase_noise(state) == 1 - abs(moments(state).e_minus) ** 2


def test_number_states_meet_the_relation_with_equality():
    for n in range(51):
        number_report = report(number_state(n))

        check.less_equal(abs(number_report.slack_eq8), 1e-12, f"n={n}")
        check.equal(number_report.lhs_eq8, 0.25)
        check.equal(number_report.rhs_eq8, 0.25)


def test_coherent_state_is_near_minimum_uncertainty():
    coherent_report = report(coherent_state(10))

    check.less(abs(coherent_report.lhs_eq8 / 0.25 - 1), 0.02)
    check.greater(coherent_report.slack_eq8, 0)


def test_coherent_state_asymptote_converges_monotonically():
    deviations = []
    for alpha, tolerance in ((4, 0.1), (8, 0.03), (16, 0.01)):
        deviation = abs(phase_noise(coherent_state(alpha)) * 4 * alpha**2 - 1)
        check.less_equal(deviation, tolerance, f"alpha={alpha}")
        deviations.append(deviation)

    assert deviations == sorted(deviations, reverse=True)


@pytest.mark.parametrize("n0", [600, 1200])
def test_truncated_phase_state_large_n0_scaling(n0):
    tps_report = report(truncated_phase_state(0.0, n0))

    check.less(abs(tps_report.lhs_eq8 / (n0 / 6) - 1), 0.02)
    check.less(abs(tps_report.rhs_eq7 / (n0 / 24) - 1), 0.05)


def test_uncertainty_relations_on_random_states():
    for index in range(10_000):
        state_report = report(random_state(generator(42, index)))

        assert state_report.slack_eq8 >= -SLACK_TOL
        assert state_report.slack_eq7 >= -SLACK_TOL
        assert state_report.slack_eq7 <= state_report.slack_eq8 + 1e-12
        assert min(state_report.cs_slacks) >= -SLACK_TOL


@settings(max_examples=300, deadline=None)
@given(amplitude_lists)
def test_uncertainty_relations_hold_for_any_state(values):
    state_report = report(canonicalize(PureState(values)))

    assert -1e-15 <= state_report.phase_noise <= 1 + 1e-15
    assert state_report.slack_eq8 >= -SLACK_TOL
    assert state_report.slack_eq7 >= -SLACK_TOL
    assert min(state_report.cs_slacks) >= -SLACK_TOL


def test_sweep_truncated_phase_states():
    points = sweep("tps", "n0", range(1, 11))

    check.equal([point.parameter for point in points], list(range(1, 11)))
    lhs = [point.report.lhs_eq8 for point in points]
    check.is_true(all(a < b for a, b in zip(lhs, lhs[1:])))


def test_sweep_triangle_states_approach_asymptote():
    points = sweep("triangle", "n0", range(2, 202, 2))
    scaled = [point.report.phase_noise * point.parameter**2 for point in points]

    check.equal(len(points), 100)
    check.is_true(all(a < b for a, b in zip(scaled, scaled[1:])))
    check.less(scaled[-1], 12)
    check.less(abs(scaled[-1] / 12 - 1), 1e-3)


def test_sweep_number_states_is_constant():
    points = sweep("number", "n", range(6))

    for point in points:
        check.less_equal(abs(point.report.slack_eq8), 1e-12)
        check.equal(point.report.phase_noise, 1)
        check.is_false(point.witness.nonclassical)


def test_sweep_records_failures_per_point():
    points = sweep("number", "n", [4, 0, 1, 2, 3], params={"dim": 3})

    check.equal([point.parameter for point in points], [0, 1, 2, 3, 4])
    check.equal([point.ok for point in points], [True, True, True, False, False])
    check.is_in("does not fit", points[3].error)
    check.is_none(points[3].report)


def test_sweep_points_carry_witness():
    points = sweep("triangle", "n0", [100])
    check.is_true(points[0].witness.nonclassical)
    check.equal(points[0].witness.phase_noise, points[0].report.phase_noise)


def test_sweep_is_independent_of_workers():
    serial = sweep("coherent", "alpha", [0.5, 1.0, 1.5, 2.0], workers=1)
    parallel = sweep("coherent", "alpha", [0.5, 1.0, 1.5, 2.0], workers=2)

    assert serial == parallel


def test_sweep_rejects_unknown_family():
    with pytest.raises(UnknownFamilyError):
        sweep("squeezed", "r", [1])
