import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from poset_oam.gauge import (
    ConvergenceError,
    GaugeCoefficient,
    TwoPointCalculus,
    curvature_coefficient,
    curvature_matrix,
    minimize_ym,
    pi_de,
    pi_de_de,
    vector_potential,
    verify_sigma_minimum,
    ym_action,
    ym_gradient,
)
from poset_oam.triple import build_sigma

coeffs = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
phases = st.floats(0, 2 * math.pi)


def test_pi_de():
    np.testing.assert_array_equal(pi_de(TwoPointCalculus(1)), [[0, -1], [1, 0]])
    np.testing.assert_array_equal(pi_de(TwoPointCalculus(1j)), [[0, 1j], [1j, 0]])


@given(phases)
def test_pi_de_squared(a):
    calc = TwoPointCalculus(np.exp(1j * a))
    d = pi_de(calc)
    np.testing.assert_allclose(d @ d, pi_de_de(calc), atol=1e-15)
    np.testing.assert_allclose(d @ d, -np.eye(2), atol=1e-15)


def test_calculus_validation():
    with pytest.raises(ValueError):
        TwoPointCalculus(2.0)
    with pytest.raises(ValueError):
        TwoPointCalculus(1.0, dim=0)


def test_vector_potential():
    calc = TwoPointCalculus()
    np.testing.assert_array_equal(vector_potential(0, calc), np.zeros((2, 2)))
    np.testing.assert_array_equal(vector_potential(-1, calc), [[0, -1], [-1, 0]])


@given(coeffs, phases)
def test_vector_potential_selfadjoint(p, a):
    V = vector_potential(p, TwoPointCalculus(np.exp(1j * a)))
    np.testing.assert_array_equal(V, V.conj().T)


def test_curvature_examples():
    assert curvature_coefficient(0) == 0
    assert curvature_coefficient(-1) == -1
    assert curvature_coefficient(GaugeCoefficient(-1)) == -1


def test_curvature_identity_many():
    rng = np.random.default_rng(0)
    z = rng.normal(size=10_000) * 3 + 1j * rng.normal(size=10_000) * 3
    c = np.array([curvature_coefficient(p) for p in z])
    np.testing.assert_allclose(c, np.abs(z + 1) ** 2 - 1, rtol=0, atol=1e-13 * (1 + np.abs(z) ** 2).max())
    small = z[np.abs(z) < 2]
    np.testing.assert_allclose(
        [curvature_coefficient(p) for p in small], np.abs(small + 1) ** 2 - 1, rtol=0, atol=1e-13
    )


def test_ym_examples():
    calc = TwoPointCalculus()
    assert ym_action(0, calc) == 0
    assert ym_action(-1, calc) == 2
    assert ym_action(-1, TwoPointCalculus(dim=3)) == 6
    assert ym_action(build_sigma(0.5, math.pi, 4), calc) < 1e-30


@given(coeffs, phases)
def test_ym_equals_trace_of_curvature_squared(p, a):
    calc = TwoPointCalculus(np.exp(1j * a))
    theta = curvature_matrix(p, calc)
    assert ym_action(p, calc) == pytest.approx(np.trace(theta @ theta).real, rel=1e-12, abs=1e-12)


@given(coeffs, st.integers(1, 4))
def test_ym_is_twice_curvature_squared(p, dim):
    c = curvature_coefficient(p)
    assert ym_action(p, TwoPointCalculus(dim=dim)) == pytest.approx(2 * c * c * dim, rel=1e-9, abs=1e-12)


def test_ym_zero_iff_flat_on_circle():
    calc = TwoPointCalculus()
    for a in np.linspace(0, 2 * math.pi, 50):
        p = np.exp(1j * a) - 1
        assert ym_action(p, calc) < 1e-28 and abs(curvature_coefficient(p)) < 1e-14
    for r in (0.5, 0.9, 1.1, 2.0):
        p = r * np.exp(0.3j) - 1
        assert ym_action(p, calc) > 1e-3 and abs(curvature_coefficient(p)) > 1e-2


@given(coeffs, phases)
def test_ym_rotation_invariance(p, a):
    calc = TwoPointCalculus()
    q = np.exp(1j * a) * (p + 1) - 1
    assert ym_action(q, calc) == pytest.approx(ym_action(p, calc), rel=1e-10, abs=1e-12)


def test_gradient_matches_central_differences():
    rng = np.random.default_rng(1)
    calc = TwoPointCalculus(dim=2)
    h = 1e-6
    for z in rng.normal(size=100) * 1.5 + 1j * rng.normal(size=100) * 1.5:
        g = ym_gradient(z, calc)
        fd = np.array([
            (ym_action(z + h, calc) - ym_action(z - h, calc)) / (2 * h),
            (ym_action(z + 1j * h, calc) - ym_action(z - 1j * h, calc)) / (2 * h),
        ])
        scale = max(np.linalg.norm(g), 1e-3)
        assert np.linalg.norm(fd - g) / scale < 1e-6


def test_minimize_from_zero_is_immediate():
    res = minimize_ym(TwoPointCalculus(), 0.0)
    assert res.iterations == 0 and res.coefficient.phi_c == 0


@pytest.mark.parametrize("init", [1.0, 2 + 1j, -1.0, 0.3 - 2j, -1 + 1e-3j])
def test_minimize_reaches_circle(init):
    tol = 1e-10
    res = minimize_ym(TwoPointCalculus(), init, tol=tol)
    p = res.coefficient.phi_c
    assert res.ym < tol
    assert abs(abs(p + 1) - 1) < math.sqrt(tol / 2)
    assert res.iterations <= 10_000
    values = [v for _, _, v in res.trace]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_minimize_from_one():
    p = minimize_ym(TwoPointCalculus(), 1.0, tol=1e-12).coefficient.phi_c
    assert abs(abs(p + 1) - 1) < 1e-6


def test_minimize_failure_modes():
    with pytest.raises(ValueError):
        minimize_ym(TwoPointCalculus(), 1.0, tol=0.0)
    with pytest.raises(ConvergenceError):
        minimize_ym(TwoPointCalculus(), 5.0, tol=1e-10, max_iters=2)


def test_sigma_minimum_examples():
    rep = verify_sigma_minimum(0.0, 2.0, 4)
    assert rep.sigma == 0 and rep.ym_value == 0 and rep.curvature_value == 0
    rep = verify_sigma_minimum(0.9, 1.7, 5)
    assert rep.ym_value < 1e-12 and abs(rep.curvature_value) < 1e-12


def test_sigma_minimum_sweep():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        rep = verify_sigma_minimum(rng.uniform(0, 1), rng.uniform(-50, 50), int(rng.integers(3, 200)))
        worst = max(worst, rep.ym_value, abs(rep.curvature_value))
    assert worst < 1e-12
