import math

import numpy as np
import pytest

from cohompsc.oracle import (
    CHRISTOFFEL_TOL,
    FD_TOL,
    central_differences,
    fd_oracle,
    ricci_tensor,
    warped_torus_ricci,
)
from cohompsc.warp import build_modified_profile, ric_functions, smooth_profile, trig_profile


def test_central_differences_on_polynomial_and_sine():
    t = np.linspace(0.1, 2.0, 7)
    d1, d2 = central_differences(lambda s: s**3, t)
    assert np.allclose(d1, 3 * t**2, atol=1e-8)
    assert np.allclose(d2, 6 * t, atol=1e-6)
    d1, d2 = central_differences(np.sin, t)
    assert np.allclose(d1, np.cos(t), atol=1e-9)
    assert np.allclose(d2, -np.sin(t), atol=1e-6)


def test_round_two_sphere_ricci_tensor():
    # dt^2 + sin(t)^2 dx^2 is the unit sphere: Ric = g
    t = 0.7
    F, dF, ddF = math.sin(t), math.cos(t), -math.sin(t)
    radial, fibre = warped_torus_ricci(F, dF, ddF, 1)
    assert radial == pytest.approx(1.0, abs=1e-12)
    assert fibre == pytest.approx(1.0, abs=1e-12)


def test_flat_torus_fibre_curvature():
    # k = 2 fibres: radial -k F''/F, fibre -F''/F - (k - 1) F'^2 / F^2
    F, dF, ddF = 0.8, 0.6, -0.8
    radial, fibre = warped_torus_ricci(F, dF, ddF, 2)
    assert radial == pytest.approx(2.0, abs=1e-12)
    assert fibre == pytest.approx(1.0 - 0.36 / 0.64, abs=1e-12)


def test_constant_warp_is_flat():
    assert warped_torus_ricci(2.0, 0.0, 0.0, 3) == (0.0, 0.0)


def test_ricci_tensor_flat_metric():
    n = 3
    Ric = ricci_tensor(np.diag([1.0, 4.0, 9.0]), np.zeros((n, n, n)), np.zeros((n, n, n, n)))
    assert np.array_equal(Ric, np.zeros((n, n)))


def test_warped_surface_both_oracles():
    p = trig_profile(1.0, 0, 0, 1, t_max=3.0)
    r = fd_oracle(p, grid_size=1024)
    assert r.ok and r.christoffel_checked
    assert set(r.christoffel_max_error) == {"ric_t", "ric_2"}
    assert max(r.christoffel_max_error.values()) <= CHRISTOFFEL_TOL


def test_three_dimensional_fibre_radial_term():
    p = trig_profile(1.0, 0, 0, 3, t_max=3.0)
    r = fd_oracle(p, grid_size=512)
    assert r.ok and "ric_t" in r.christoffel_max_error and "ric_2" not in r.christoffel_max_error
    assert r.notes
    t = np.array([0.5, 1.0, 2.0])
    assert np.allclose(ric_functions(p, t)[0], 3.0, atol=1e-12)


def test_fd_audit_on_smoothed_modified_profile():
    p = smooth_profile(build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, epsilon=0.05, t_max=3.0), 0.01)
    r = fd_oracle(p)
    assert r.derivative_ok and not r.christoffel_checked
    assert max(r.derivative_max_error.values()) <= FD_TOL
    assert set(r.to_json()) >= {"derivative_ok", "christoffel_ok"}
