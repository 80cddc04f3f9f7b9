import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import bound_state
from cubicdirac.bubbles import BubbleSpec, bubble_profile
from cubicdirac.domain import PhysParams, RadialProfile
from cubicdirac.errors import BracketNotFound, ZeroAngularIndex
from cubicdirac.shooting import (ShootingConfig, ShotKind, bisect_amplitude, classify_shot,
                                 find_bracket, node_count, solve_all, solve_bound_state)


def test_config_invariants():
    with pytest.raises(ValueError):
        ShootingConfig(r0=1.0, R=0.5)
    with pytest.raises(ValueError):
        ShootingConfig(c_bracket=(2.0, 1.0))
    with pytest.raises(ValueError):
        ShootingConfig(tol_c=0.0)
    h = ShootingConfig().halved()
    assert h.rtol == 5e-11 and h.atol == 5e-15


def test_linear_oracle_sign_pattern():
    # near c = 0 the regular solution is the linear one: v > 0 growing like e^{mu r}, u < 0
    sol = oracles.linear_regular_solution(1.0, 0.0, 1, 20.0)
    r = np.linspace(1e-3, 20.0, 2000)
    u, v = sol.sol(r)
    assert np.all(v > 0) and np.all(u < 0)
    rate = np.polyfit(r[-500:], np.log(v[-500:]), 1)[0]
    assert rate == pytest.approx(1.0, rel=0.05)


@pytest.mark.parametrize("c", [1e-3, 1e-2, 0.1])
def test_small_amplitude_undershoots(c):
    assert classify_shot(c, PhysParams(1.0, 0.0, 1)).kind is ShotKind.UNDERSHOOT


def test_large_amplitude_overshoots():
    out = classify_shot(10.0, PhysParams(1.0, 0.0, 1))
    assert out.kind is ShotKind.OVERSHOOT
    assert out.r_event < 3.0


@pytest.mark.parametrize("S", [-2, 2])
def test_classification_sides_other_indices(S):
    p = PhysParams(1.0, 0.5, S)
    assert classify_shot(1e-3, p).kind is ShotKind.UNDERSHOOT
    assert classify_shot(20.0, p).kind is ShotKind.OVERSHOOT


def test_bracket_and_bisection_invariants():
    params = PhysParams(1.0, 0.0, 1)
    cfg = ShootingConfig()
    lo, hi = find_bracket(params, cfg)
    assert (lo, hi) == (4.0, 8.0)
    bis = bisect_amplitude(params, (lo, hi), cfg)
    assert bis["hi"] - bis["lo"] <= cfg.tol_c
    assert bis["kind_lo"] != bis["kind_hi"]
    assert classify_shot(bis["lo"], params, cfg).kind is bis["kind_lo"]
    assert classify_shot(bis["hi"], params, cfg).kind is bis["kind_hi"]
    w = np.array(bis["widths"])
    assert np.all(w[1:] <= w[:-1] * 0.5 * (1 + 1e-12))


def test_bracket_with_same_sides():
    with pytest.raises(BracketNotFound):
        bisect_amplitude(PhysParams(1.0, 0.0, 1), (1e-3, 1e-2))


def test_zero_index_rejected_before_integration():
    with pytest.raises(ZeroAngularIndex):
        solve_bound_state(PhysParams(1.0, 0.0, 0))


def test_ground_state(ground_101):
    params, prof = ground_101
    meta = prof.meta
    # frozen from the converged run (tol_c 1e-9)
    assert meta["c_star"] == pytest.approx(7.897008435292033, abs=1e-8)
    assert meta["amplitude_R"] < ShootingConfig().tail_threshold
    assert 0 < meta["action"] < 3 * math.pi
    assert meta["residual_rms"] <= 1e-8
    assert prof.has_derivatives()


def test_ground_state_node_counts(ground_101):
    # v is nodeless; u has a single sign change near where the two components
    # exchange dominance in the tail
    assert node_count(ground_101[1]) == (1, 0)


def test_higher_frequency_decays_slower():
    _, slow = bound_state(1.0, 0.9, 1)
    _, fast = bound_state(1.0, 0.0, 1)
    assert slow.meta["mu"] == pytest.approx(math.sqrt(0.19), rel=1e-12)
    assert slow.meta["mu"] == pytest.approx(0.436, abs=5e-4)

    def radius_at(prof, level):
        return prof.r[np.nonzero(prof.amplitude > level)[0][-1]]

    assert radius_at(slow, 1e-6) > radius_at(fast, 1e-6)


@pytest.mark.parametrize("case,c_star", [((1.0, 0.5, 1), 1.4631761267691648),
                                          ((1.0, 0.5, -2), 2.111615285449645),
                                          ((1.0, 0.5, 2), 0.3714727549923253)])
def test_other_bound_states(case, c_star):
    params, prof = bound_state(*case)
    assert prof.meta["c_star"] == pytest.approx(c_star, abs=1e-8)
    assert 0 < prof.meta["action"] < abs(2 * params.S + 1) * math.pi
    assert np.all(prof.v > 0)


def test_solve_all_flags_lowest_action():
    params = PhysParams(1.0, 0.0, 1)
    found = solve_all(params, k_range=(1, 4))
    assert len(found) >= 1
    assert found[0].meta["lowest_action"]
    assert found[0].meta["c_star"] == pytest.approx(7.897008435292033, abs=1e-8)


def test_bubble_node_count():
    assert node_count(bubble_profile(BubbleSpec.canonical(1))) == (0, 0)


@given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=3, max_size=60))
def test_node_count_sign_invariance(values):
    r = np.arange(1, len(values) + 1, dtype=float)
    a = np.array(values)
    prof = RadialProfile(r, a, a[::-1])
    flipped = prof.with_values(u=-a)
    assert node_count(prof) == node_count(flipped)
