import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubicdirac.bubbles import BubbleSpec, bubble_profile
from cubicdirac.domain import (PAULI, SIGMA1, SIGMA2, SIGMA3, PhysParams, RadialProfile,
                               SpinorField2D, ansatz_embed, embed_function, grid_coords,
                               make_params, mu, rotate_field, s1_phase)
from cubicdirac.errors import (FrequencyOutOfGap, NonPositiveMass, ProfileTooShort,
                               ZeroAngularIndex)

I2 = np.eye(2)


def test_pauli_entries():
    assert np.array_equal(SIGMA1, [[0, 1], [1, 0]])
    assert np.array_equal(SIGMA2, [[0, -1j], [1j, 0]])
    assert np.array_equal(SIGMA3, [[1, 0], [0, -1]])


@pytest.mark.parametrize("j", range(3))
@pytest.mark.parametrize("k", range(3))
def test_pauli_anticommutators(j, k):
    a, b = PAULI[j], PAULI[k]
    assert np.max(np.abs(a @ b + b @ a - 2 * (j == k) * I2)) <= 1e-15


def test_pauli_product():
    assert np.max(np.abs(SIGMA1 @ SIGMA2 - 1j * SIGMA3)) <= 1e-15
    for s in PAULI:
        assert np.max(np.abs(s @ s - I2)) <= 1e-15


def test_make_params_valid():
    p = make_params(1, 0, 1)
    assert (p.m, p.omega, p.S) == (1, 0, 1)


@pytest.mark.parametrize("args,exc", [
    ((1, 1, 1), FrequencyOutOfGap),
    ((1, -1, 1), FrequencyOutOfGap),
    ((0, 0, 1), NonPositiveMass),
    ((-1, 0, 1), NonPositiveMass),
    ((1, 0.5, 0), ZeroAngularIndex),
])
def test_make_params_errors(args, exc):
    with pytest.raises(exc):
        make_params(*args)


def test_zero_index_allowed_outside_solver_paths():
    assert make_params(1, 0.5, 0, solver_grade=False).S == 0


@pytest.mark.parametrize("m,omega,expected", [(1, 0, 1.0), (1, 0.5, 0.8660254), (2, 0, 2.0)])
def test_mu_examples(m, omega, expected):
    assert mu(make_params(m, omega, 1)) == pytest.approx(expected, abs=5e-8)


@given(st.floats(0.01, 100), st.floats(-0.999, 0.999))
def test_mu_range(m, frac):
    p = make_params(m, frac * m, 1)
    assert 0 < p.mu <= m
    if p.omega == 0:
        assert p.mu == m
    elif abs(p.omega) > 1e-7 * m:  # below this m^2 - omega^2 rounds to m^2
        assert p.mu < m


def test_radial_profile_invariants():
    with pytest.raises(ValueError):
        RadialProfile([0.0, 1.0], [0, 0], [0, 0])
    with pytest.raises(ValueError):
        RadialProfile([1.0, 1.0], [0, 0], [0, 0])
    with pytest.raises(ValueError):
        RadialProfile([1.0, 2.0], [0, np.nan], [0, 0])
    with pytest.raises(ValueError):
        RadialProfile([1.0, 2.0], [0, 0, 0], [0, 0])


def test_spinor_field_invariants():
    with pytest.raises(ValueError):
        SpinorField2D(12, 1.0, np.zeros((2, 12, 12)))
    with pytest.raises(ValueError):
        SpinorField2D(8, 0.0, np.zeros((2, 8, 8)))
    with pytest.raises(ValueError):
        SpinorField2D(8, 1.0, np.full((2, 8, 8), np.inf))


def test_grid_contains_origin_node():
    X, Y = grid_coords(16, 4.0)
    assert X[8, 8] == 0 and Y[8, 8] == 0


def _bubble_field(S, n=64, L=8.0):
    return embed_function(BubbleSpec.canonical(S), S, n, L), BubbleSpec.canonical(S)


def test_embedding_on_positive_axis():
    S = 1
    field, spec = _bubble_field(S)
    X, _ = grid_coords(field.n, field.L)
    j = np.arange(field.n // 2 + 1, field.n)
    r = X[j, field.n // 2]
    u, v = spec(r)
    assert np.allclose(field.values[0, j, field.n // 2], v, rtol=0, atol=1e-14)
    assert np.allclose(field.values[1, j, field.n // 2], 1j * u, rtol=0, atol=1e-14)


def test_origin_values():
    for S, expect in ((1, (0, 0)), (2, (0, 0))):
        field, _ = _bubble_field(S)
        assert tuple(field.values[:, 32, 32]) == expect
    # S = -1: u ~ r^0 survives at the origin, v -> 0
    field, spec = _bubble_field(-1)
    assert field.values[0, 32, 32] == 0
    assert abs(field.values[1, 32, 32] - 1j * spec(np.array([1e-9]))[0][0]) < 1e-6


def test_ansatz_embed_ring_symmetry():
    S = 1
    prof = bubble_profile(BubbleSpec.canonical(S), 1e-4, 100.0, 20001)
    field = ansatz_embed(prof, S, 64, 8.0)
    mod = field.modulus()
    X, Y = grid_coords(64, 8.0)
    r = np.hypot(X, Y)
    # points (a, b), (b, a), (-a, b), ... lie on one ring
    for a, b in ((3, 5), (7, 2), (10, 1)):
        vals = [mod[32 + s * a, 32 + t * b] for s in (1, -1) for t in (1, -1)]
        vals += [mod[32 + s * b, 32 + t * a] for s in (1, -1) for t in (1, -1)]
        assert np.ptp(vals) <= 1e-12 * max(vals)
    exact = np.hypot(*BubbleSpec.canonical(S)(np.where(r == 0, 1.0, r)))
    sel = (r > 0.5) & (r < 3.5)
    assert np.max(np.abs(mod[sel] - exact[sel]) / exact[sel]) < 1e-6


def test_ansatz_embed_recovers_profile_on_axis():
    S = 2
    spec = BubbleSpec.canonical(S)
    prof = bubble_profile(spec, 1e-4, 100.0, 20001)
    field = ansatz_embed(prof, S, 64, 8.0)
    X, _ = grid_coords(64, 8.0)
    j = np.arange(33, 64)
    u, v = spec(X[j, 32])
    assert np.max(np.abs(field.values[0, j, 32] - v)) < 1e-6
    assert np.max(np.abs(field.values[1, j, 32].imag - u)) < 1e-6


def test_ansatz_embed_too_short():
    prof = bubble_profile(BubbleSpec.canonical(1), 1e-3, 5.0, 500)
    with pytest.raises(ProfileTooShort):
        ansatz_embed(prof, 1, 64, 8.0)


@pytest.mark.parametrize("S", [1, -2, 3])
@pytest.mark.parametrize("turns", [1, 2, 3])
def test_rotation_covariance(S, turns):
    field, _ = _bubble_field(S)
    angle = turns * math.pi / 2
    rotated = rotate_field(field, turns)
    # psi(R x) = diag(e^{iS a}, e^{i(S+1) a}) psi(x)
    expect = np.einsum("ij,jab->iab", s1_phase(S, angle), field.values)
    # the row/column at index 0 has no rotated partner on the periodic grid
    assert np.max(np.abs(rotated.values[:, 1:, 1:] - expect[:, 1:, 1:])) <= 1e-12


def test_physparams_check():
    assert PhysParams(1.0, 0.2, 1).check().mu == pytest.approx(math.sqrt(0.96))
