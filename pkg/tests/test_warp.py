import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cohompsc.lie import abelian, direct_sum, span, su2, zero_subspace
from cohompsc.warp import (
    CSV_HEADER,
    ProfileError,
    Slot,
    block_splitting,
    break_points,
    build_gz_profile,
    build_modified_profile,
    eval_profile,
    ric_A,
    ric_functions,
    ric_limits_at_zero,
    ric_T,
    samples_csv,
    smooth_profile,
    trig_profile,
    uniform_grid,
    verify_profile,
)

GRID = np.linspace(1e-3, 9.99, 5000)


@pytest.fixture(scope="module")
def modified():
    return smooth_profile(build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, 0.05, 10.0), 0.01)


@pytest.fixture(scope="module")
def gz():
    return smooth_profile(build_gz_profile(0.5, 0.5, 1.0, 1, 1, 1, 10.0), 0.01)


# -- construction ------------------------------------------------------------

def test_gz_crossing_times():
    p = build_gz_profile(0.5, 0.5, 1.0, 1, 1, 1, 3.0)
    assert p.t0 == pytest.approx(math.asin(0.25), abs=1e-15)
    assert p.t0 == pytest.approx(0.252680, abs=1e-6)
    assert p.t1 == pytest.approx(0.523599, abs=1e-6)
    assert build_gz_profile(0.5, 0.5, 2.0, 1, 1, 1, 4.0).t1 == pytest.approx(math.pi / 3, abs=1e-15)


def test_gz_pieces():
    p = build_gz_profile(0.5, 0.5, 1.0, 1, 1, 1, 3.0)
    F0, F1, F2, dF0, dF1, dF2, *_ = eval_profile(p, math.pi / 4)
    assert F2 == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
    assert dF2 == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
    assert eval_profile(p, math.pi / 4)[8] == pytest.approx(-math.sqrt(2) / 2, abs=1e-15)
    assert (F0, dF0) == (0.25, 0.0)          # constant abc, not c, after t0
    assert (F1, dF1) == (0.5, 0.0)          # t1 = pi/6 < pi/4
    assert eval_profile(p, 2.5)[:3] == (0.25, 0.5, 1.0)


def test_gz_limit_all_equal():
    p = build_gz_profile(1.0, 1.0, 1.0, 1, 1, 1, 3.0)
    assert p.t0 == p.t1 == pytest.approx(math.pi / 2)
    t = np.linspace(0.01, 1.5, 50)
    F = eval_profile(p, t)
    assert np.allclose(F[0], np.sin(t)) and np.allclose(F[1], F[2])


def test_initial_slope_is_one(modified, gz):
    for p in (modified, gz):
        v = eval_profile(p, 0.0)
        assert v[:3] == (0.0, 0.0, 0.0)
        assert v[3:6] == pytest.approx((1.0, 1.0, 1.0), abs=1e-15)


def test_modified_lambda_example():
    p = build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, 0.1, 3.0)
    t_star = math.pi / 2 - 0.1
    assert p.lambdas[2] == pytest.approx(1 / (1 - math.cos(0.1)) - t_star, rel=1e-12)
    assert p.lambdas[2] == pytest.approx(198.6959, abs=1e-4)
    assert eval_profile(p, t_star)[2] == pytest.approx(0.9950042, abs=1e-7)


def test_modified_extension_matching():
    p = build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, 0.05, 50.0)
    ts = p.t1 - 0.05
    left = eval_profile(p, ts - 1e-12)
    right = eval_profile(p, ts + 1e-12)
    assert right[1] == pytest.approx(left[1], abs=1e-10)
    assert right[4] == pytest.approx(left[4], abs=1e-9)
    t = np.linspace(ts, 50.0, 2000)
    F1 = eval_profile(p, t)[1]
    assert np.all(F1 < 0.5) and np.all(np.diff(F1) > 0)


def test_modified_rational_second_derivative():
    p = build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, 0.05, 10.0)
    t = 5.0
    assert eval_profile(p, t)[8] == pytest.approx(-2 / (t + p.lambdas[2]) ** 3, rel=1e-12)


@pytest.mark.parametrize("kwargs", [
    dict(a=1.5), dict(b=-0.1), dict(c=0.0), dict(d2=-1), dict(t_max=1.0),
])
def test_gz_parameter_errors(kwargs):
    args = dict(a=0.5, b=0.5, c=1.0, d0=1, d1=1, d2=1, t_max=3.0) | kwargs
    with pytest.raises(ProfileError):
        build_gz_profile(**args)


@pytest.mark.parametrize("eps", [0.0, 0.2527, 0.3, -0.1])
def test_modified_epsilon_range(eps):
    with pytest.raises(ProfileError):
        build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, eps, 3.0)


def test_modified_epsilon_bound_ignores_inactive_blocks():
    p = build_modified_profile(0.5, 0.5, 1.0, 0, 1, 1, 0.4, 3.0)
    assert p.active == (False, True, True)


def test_smoothing_window_errors():
    p = build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, 0.05, 3.0)
    with pytest.raises(ProfileError):
        smooth_profile(p, -0.01)
    with pytest.raises(ProfileError):
        smooth_profile(p, 0.2)


def test_zero_delta_is_identity():
    p = build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, 0.05, 3.0)
    t = uniform_grid(3.0, 500)
    assert all(np.array_equal(x, y) for x, y in zip(eval_profile(p, t), eval_profile(smooth_profile(p, 0), t)))


def test_smoothing_is_local(modified):
    raw = build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, 0.05, 10.0)
    t = np.array([0.1, 0.5, 1.0, 3.0, 9.0])
    assert np.allclose(np.vstack(eval_profile(raw, t)), np.vstack(eval_profile(modified, t)), atol=1e-15)


def test_blend_is_continuous_to_second_order(gz):
    top = math.pi / 2
    for edge in (top - 0.01, top + 0.01):
        a = np.array(eval_profile(gz, edge - 1e-11))
        b = np.array(eval_profile(gz, edge + 1e-11))
        assert np.max(np.abs(a - b)[:6]) <= 1e-9
        assert np.max(np.abs(a - b)[6:]) <= 1e-6


def test_out_of_range():
    p = build_gz_profile(0.5, 0.5, 1.0, 1, 1, 1, 3.0)
    with pytest.raises(ProfileError):
        eval_profile(p, 3.5)
    with pytest.raises(ProfileError):
        eval_profile(p, -0.1)


# -- invariants --------------------------------------------------------------

@pytest.mark.parametrize("name", ["modified", "gz"])
def test_ordering_and_unit_range(name, request):
    p = request.getfixturevalue(name)
    F = eval_profile(p, GRID)
    assert np.all(F[0] <= F[1] + 1e-12) and np.all(F[1] <= F[2] + 1e-12)
    for i, scale in enumerate(p.scales):
        f = F[i] / scale
        assert f.min() >= 0 and f.max() <= 1 + 1e-12


def test_modified_strictly_concave(modified):
    v = eval_profile(modified, GRID)
    assert max(v[6].max(), v[7].max(), v[8].max()) < 0


# -- Ricci functions ---------------------------------------------------------

def test_round_sphere_reduction():
    p = trig_profile(1.0, 1, 1, 1, 1.6)
    t = np.linspace(1e-3, math.pi / 2 - 1e-3, 1000)
    for r in ric_functions(p, t):
        assert np.max(np.abs(r - 3.0)) <= 1e-9


def test_round_sphere_scales_with_c():
    p = trig_profile(2.0, 1, 2, 3, 3.0)
    t = np.linspace(0.01, 3.0, 200)
    for r in ric_functions(p, t):
        assert np.allclose(r, 6 / 4, atol=1e-9)


def test_warped_surface():
    p = trig_profile(1.0, 0, 0, 1, 3.0)
    t = np.linspace(0.01, 3.0, 300)
    rt, r0, r1, r2 = ric_functions(p, t)
    assert np.allclose(rt, 1.0, atol=1e-12) and np.allclose(r2, 1.0, atol=1e-12)
    assert np.all(np.isnan(r0)) and np.all(np.isnan(r1))
    assert ric_T(p, math.pi / 4) == pytest.approx(1.0, abs=1e-15)


def test_degeneration_identity(modified):
    p = replace(modified, d=(0, 0, 1))
    v = eval_profile(p, GRID)
    rt, _, _, r2 = ric_functions(p, GRID)
    assert np.max(np.abs(r2 + v[8] / v[2])) <= 1e-12
    assert np.max(np.abs(rt + v[8] / v[2])) <= 1e-12


def test_gz_constant_region_values():
    p = build_gz_profile(0.5, 0.5, 1.0, 1, 1, 1, 5.0)
    rt, r0, r1, r2 = ric_functions(p, 3.0)
    assert rt == 0.0
    assert r0 == pytest.approx(1.0625, abs=1e-15)
    assert r1 == pytest.approx((0.25 ** 2 / 0.25 + 3 * 0) / 0.25 + 0.25 / 1.0, abs=1e-12)
    assert r2 > 0


def test_limits_at_zero():
    p = build_modified_profile(0.5, 0.5, 1.0, 1, 2, 3, 0.05, 3.0)
    assert ric_limits_at_zero(p) == (6.0, 6.0, 6.0, 6.0)
    near = np.array(ric_functions(p, 1e-4))
    assert np.allclose(near, 6.0, atol=1e-3)
    assert ric_functions(p, 0.0) == (6.0, 6.0, 6.0, 6.0)


def test_degenerate_profile_detected():
    p = trig_profile(1.0, 0, 0, 1, 3.1)
    with pytest.raises(ProfileError):
        ric_functions(replace(p, t_max=3.5), np.array([3.2]))


# -- Ric(A) ------------------------------------------------------------------

def su2_splitting():
    G = su2()
    z = zero_subspace(G)
    return block_splitting(G, z, z, z, span(G, [[1, 0, 0]]))


@pytest.mark.parametrize("f2", [0.0, 0.3, 1.0])
def test_ric_A_su2_chain(f2):
    assert ric_A(su2_splitting(), [0, 1, 0], 0, 0, f2) == pytest.approx(1 - f2**2 / 2, abs=1e-12)


def test_ric_A_rejects_vector_outside_m():
    with pytest.raises(ValueError):
        ric_A(su2_splitting(), [1, 0, 0], 0, 0, 0.5)


def test_block_splitting_requires_orthogonality():
    G = su2()
    z = zero_subspace(G)
    with pytest.raises(ValueError):
        block_splitting(G, z, span(G, [[1, 0, 0]]), z, span(G, [[1, 1, 0]]))


def test_ric_A_abelian_zero():
    G = abelian(4)
    z = zero_subspace(G)
    s = block_splitting(G, z, z, span(G, [[1, 0, 0, 0]]), span(G, [[0, 1, 0, 0]]))
    rng = np.random.default_rng(1)
    for _ in range(100):
        A = s.m.basis.T @ rng.normal(size=s.m.dim)
        assert ric_A(s, A, 0.3, 0.7, 1.0) == 0.0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-2, 2, allow_nan=False), min_size=3, max_size=3),
       st.floats(0, math.sqrt(2)), st.floats(0, math.sqrt(2)))
def test_ric_A_nonnegative(coeffs, f1, f2):
    # su(2) + su(2) with k = diagonal-ish blocks inside the first factor
    G = direct_sum(su2(), su2())
    e = np.eye(6)
    z = zero_subspace(G)
    s = block_splitting(G, z, z, span(G, [e[0]]), span(G, [e[3]]))
    A = s.m.basis.T @ np.array(coeffs + [0.0])
    assert ric_A(s, A, 0.0, f1, f2) >= -1e-12


# -- reports -----------------------------------------------------------------

def test_verify_modified(modified):
    r = verify_profile(modified, 4096)
    assert r.uniformly_positive and r.nonnegative
    assert all(v > 0 for v in r.minima.values())
    assert r.strictly_concave and r.ordered and r.f_in_unit_interval
    assert all(v > 0 for v in r.slope_at_zero.values())
    assert r.uniform_lower_bound == min(r.minima.values())


def test_verify_gz(gz):
    r = verify_profile(gz, 4096)
    assert r.nonnegative and not r.uniformly_positive
    assert r.minima["ric_t"] == pytest.approx(0.0, abs=1e-9)


def test_convex_bump_flagged():
    p = trig_profile(1.0, 0, 0, 1, 2.0)

    def sinh_piece(t):
        return np.sinh(t), np.cosh(t), np.sinh(t)

    bad = replace(p, slots=(p.slots[0], p.slots[1], Slot((sinh_piece,), (), 1.0, True)))
    r = verify_profile(bad, 256)
    assert r.minima["ric_t"] < 0 and not r.nonnegative


def test_inactive_slots_reported_as_none():
    p = trig_profile(1.0, 0, 0, 2, 3.0)
    r = verify_profile(p, 64)
    assert r.minima["ric_0"] is None and r.minima["ric_1"] is None
    assert r.to_json()["minima"]["ric_0"] is None


def test_grid_size_check(modified):
    with pytest.raises(ValueError):
        verify_profile(modified, 1)


def test_csv_format(modified):
    text = samples_csv(modified, 16)
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 17
    assert float(lines[-1].split(",")[0]) == 10.0
    assert samples_csv(modified, 16) == text


def test_csv_break_points():
    p = build_modified_profile(0.5, 0.5, 1.0, 1, 1, 1, 0.1, 3.0)
    rows = samples_csv(p, 10, include_breaks=True).splitlines()[1:]
    assert len(rows) == 10 + len(break_points(p))
    t = [float(r.split(",")[0]) for r in rows]
    assert t == sorted(t)
    row = next(r for r in rows if abs(float(r.split(",")[0]) - (math.pi / 2 - 0.1)) < 1e-12)
    assert float(row.split(",")[3]) == pytest.approx(0.9950042, abs=1e-7)
