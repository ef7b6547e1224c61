"""Warping profiles F_0, F_1, F_2 for the metric dt^2 + sum f_i^2 Q|p_i + Q|m.

F_i = scale_i * f_i with scale_0 = abc, scale_1 = bc, scale_2 = c.  Each F_i is
piecewise analytic (sine, constant, or limit - kappa / (t + lambda)); corners
are smoothed on [t_b - delta, t_b + delta] by prescribing the second derivative
there and integrating it with Gauss-Legendre quadrature.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .lie import RANK_TOL, LieAlgebraModel, Subspace, bracket, orthogonal_complement, sum_subspaces

_GL_X, _GL_W = np.polynomial.legendre.leggauss(32)
BERNSTEIN_DEGREE = 4
# each blended term keeps at least this share of its curvature
MULT_FLOOR = -0.9
MAX_HALVINGS = 6


class ProfileError(ValueError):
    """Parameters outside the range where the construction is defined."""


# -- analytic pieces ---------------------------------------------------------

@dataclass(frozen=True)
class TrigPiece:
    c: float

    def __call__(self, t):
        s, co = np.sin(t / self.c), np.cos(t / self.c)
        return self.c * s, co, -s / self.c


@dataclass(frozen=True)
class ConstPiece:
    value: float

    def __call__(self, t):
        z = np.zeros_like(t)
        return z + self.value, z, z


@dataclass(frozen=True)
class RationalPiece:
    """limit - kappa / (t + lam)."""

    limit: float
    kappa: float
    lam: float

    def __call__(self, t):
        u = t + self.lam
        return self.limit - self.kappa / u, self.kappa / u**2, -2.0 * self.kappa / u**3


def _septic_density(s):
    # derivative of the C^3 smoothstep; integrates to 1 on [0, 1]
    return 140.0 * s**3 * (1.0 - s) ** 3


def _septic_step(s):
    return s**4 * (35.0 - 84.0 * s + 70.0 * s**2 - 20.0 * s**3)


def _bounded_min_norm(A, rhs, scale, floor):
    """Solve A m = rhs with m >= floor, minimising |m / scale| over the free entries.

    Active set: entries that fall below the floor are pinned there and the rest re-solved.
    """
    n = A.shape[1]
    m = np.zeros(n)
    free = np.abs(A).sum(axis=0) > 0
    pinned = np.zeros(n, dtype=bool)
    while True:
        cols = free & ~pinned
        if np.linalg.matrix_rank(A[:, cols]) < A.shape[0]:
            return None
        target = rhs - A[:, pinned] @ m[pinned]
        m[cols] = scale[cols] * np.linalg.lstsq(A[:, cols] * scale[cols], target, rcond=1e-13)[0]
        low = cols & (m < floor)
        if not low.any():
            return m
        m[low] = floor
        pinned |= low


@dataclass(frozen=True)
class BlendPiece:
    """C^4 join of `left` and `right` across [lo, hi], centred on the corner t_b.

    S'' = (1 - chi) L'' + chi R'' + jump chi', started from the values of L at lo,
    where chi steps from 0 to 1 across [t_b - inner, t_b + inner].  Corrections
    m_jk g_k B_j(psi) are added, with g_k running over those three terms, psi the
    step across the whole window and B_j the interior Bernstein polynomials of
    degree BERNSTEIN_DEGREE.  These vanish to high order at both ends, so S''
    still equals L'' at lo and R'' at hi.  The m_jk make S and S' meet R at hi.
    Since the B_j sum to at most 1, each term keeps its sign while every
    m_jk > -1, so a concave corner stays concave.

    A step as wide as the window can leave a defect no sign-preserving
    correction can absorb when R'' varies fast (a tail near its pole), so
    `join` narrows `inner` until the correction stays above MULT_FLOOR.
    """

    left: object
    right: object
    lo: float
    hi: float
    jump: float
    inner: float
    mult: tuple[float, ...] = ()

    @classmethod
    def join(cls, left, right, t_b: float, delta: float) -> "BlendPiece":
        lo, hi = t_b - delta, t_b + delta
        jump = float(right(np.array(t_b))[1] - left(np.array(t_b))[1])
        L0, L1, _ = (float(v) for v in left(np.array(lo)))
        R0, R1, _ = (float(v) for v in right(np.array(hi)))
        # rescaling the left piece's curvature is a last resort: easing it would
        # lift S above L just past lo, where the next-larger F_i still equals L
        scale = np.repeat([1e-3, 1.0, 1.0], BERNSTEIN_DEGREE - 1)
        for halving in range(MAX_HALVINGS + 1):
            base = cls(left, right, lo, hi, jump, delta / 2**halving)
            x, w = base._nodes(np.array([hi]))
            x, w = x[0], w[0]
            f, cols = base._terms(x)
            A = np.array([[w @ g for g in cols], [w @ ((hi - x) * g) for g in cols]])
            rhs = np.array([R1 - L1 - w @ f, R0 - L0 - L1 * (hi - lo) - w @ ((hi - x) * f)])
            mult = _bounded_min_norm(A, rhs, scale, MULT_FLOOR)
            if mult is not None:
                return replace(base, mult=tuple(float(m) for m in mult))
        raise ProfileError(f"no sign-preserving join of width {delta:g} at t = {t_b:.6g}")

    def _nodes(self, t):
        """Gauss-Legendre nodes on [lo, t], split where the inner step starts and stops."""
        mid = 0.5 * (self.lo + self.hi)
        edges = [self.lo, mid - self.inner, mid + self.inner]
        xs, ws = [], []
        for k, a in enumerate(edges):
            b = np.minimum(t, edges[k + 1]) if k + 1 < len(edges) else t
            half = np.maximum(b - a, 0.0)[:, None] / 2.0
            xs.append(a + half * (_GL_X[None, :] + 1.0))
            ws.append(half * _GL_W[None, :])
        return np.concatenate(xs, axis=1), np.concatenate(ws, axis=1)

    def _terms(self, x):
        mid = 0.5 * (self.lo + self.hi)
        s = np.clip((x - (mid - self.inner)) / (2.0 * self.inner), 0.0, 1.0)
        chi = _septic_step(s)
        base = ((1.0 - chi) * self.left(x)[2], chi * self.right(x)[2],
                self.jump * _septic_density(s) / (2.0 * self.inner))
        psi = _septic_step((x - self.lo) / (self.hi - self.lo))
        n = BERNSTEIN_DEGREE
        weights = [math.comb(n, j) * psi**j * (1.0 - psi) ** (n - j) for j in range(1, n)]
        return sum(base), tuple(g * wgt for g in base for wgt in weights)

    def _second(self, x):
        f, cols = self._terms(x)
        return f + sum(m * g for m, g in zip(self.mult, cols))

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        L0, L1, _ = (float(v) for v in self.left(np.array(self.lo)))
        x, w = self._nodes(t)
        f = self._second(x)
        d1 = L1 + np.sum(w * f, axis=1)
        d0 = L0 + L1 * (t - self.lo) + np.sum(w * (t[:, None] - x) * f, axis=1)
        return d0, d1, self._second(t)


# -- profiles ----------------------------------------------------------------

@dataclass(frozen=True)
class Slot:
    """One warping function: pieces[k] is used on [breaks[k-1], breaks[k])."""

    pieces: tuple
    breaks: tuple[float, ...] = ()
    scale: float = 0.0
    active: bool = True

    def segments(self, delta: float) -> tuple[np.ndarray, list]:
        if delta <= 0 or not self.breaks:
            starts = [0.0] + list(self.breaks)
            return np.array(starts), list(self.pieces)
        starts, pieces = [0.0], [self.pieces[0]]
        for k, tb in enumerate(self.breaks):
            starts += [tb - delta, tb + delta]
            pieces += [BlendPiece.join(self.pieces[k], self.pieces[k + 1], tb, delta), self.pieces[k + 1]]
        return np.array(starts), pieces


@dataclass(frozen=True, eq=False)
class WarpProfile:
    variant: str
    a: float
    b: float
    c: float
    d: tuple[int, int, int]
    slots: tuple[Slot, Slot, Slot]
    t_max: float
    t0: float = math.nan
    t1: float = math.nan
    epsilon: float = 0.0
    lambdas: tuple[Optional[float], ...] = (None, None, None)
    kappas: tuple[Optional[float], ...] = (None, None, None)
    delta: float = 0.0
    _segments: tuple = field(default=(), repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_segments", tuple(s.segments(self.delta) for s in self.slots))

    @property
    def scales(self) -> tuple[float, float, float]:
        return tuple(s.scale for s in self.slots)

    @property
    def active(self) -> tuple[bool, bool, bool]:
        return tuple(s.active for s in self.slots)

    def eval_slot(self, i: int, t: np.ndarray):
        starts, pieces = self._segments[i]
        idx = np.searchsorted(starts, t, side="right") - 1
        F, dF, ddF = (np.empty_like(t) for _ in range(3))
        for k in np.unique(idx):
            mask = idx == k
            v = pieces[k](t[mask])
            F[mask], dF[mask], ddF[mask] = v
        return F, dF, ddF


def _check_common(a, b, c, d, t_max):
    if not (c > 0 and math.isfinite(c)):
        raise ProfileError(f"c must be positive, got {c}")
    if any(int(x) != x or x < 0 for x in d):
        raise ProfileError(f"block dimensions must be non-negative integers, got {d}")
    if sum(d) == 0:
        raise ProfileError("at least one block dimension must be positive")
    for name, v in (("a", a), ("b", b)):
        if not (0.0 <= v <= 1.0):
            raise ProfileError(f"{name} must lie in [0, 1], got {v}")
    if d[0] and a * b == 0:
        raise ProfileError("abc vanishes although d0 > 0")
    if d[1] and b == 0:
        raise ProfileError("bc vanishes although d1 > 0")
    if not (t_max > 0 and math.isfinite(t_max)):
        raise ProfileError(f"t_max must be positive, got {t_max}")


def _zero_slot() -> Slot:
    return Slot((ConstPiece(0.0),), (), 0.0, False)


def build_gz_profile(a: float, b: float, c: float, d0: int, d1: int, d2: int,
                     t_max: float) -> WarpProfile:
    """Sine up to the crossing of abc, bc, c, constant afterwards.

    a = b = 1 is accepted as the limiting case in which all three functions agree.
    """
    d = (int(d0), int(d1), int(d2))
    _check_common(a, b, c, d, t_max)
    top = math.pi * c / 2.0
    if t_max <= top:
        raise ProfileError(f"t_max must exceed pi c / 2 = {top:.6g}")
    t0, t1 = c * math.asin(a * b), c * math.asin(b)
    trig = TrigPiece(c)

    def slot(scale, crossing, active):
        if not active:
            return _zero_slot()
        return Slot((trig, ConstPiece(scale)), (crossing,), scale, True)

    slots = (slot(a * b * c, t0, d[0] > 0), slot(b * c, t1, d[1] > 0), slot(c, top, d[2] > 0))
    return WarpProfile("gz", a, b, c, d, slots, t_max, t0=t0, t1=t1)


def trig_profile(c: float, d0: int, d1: int, d2: int, t_max: float) -> WarpProfile:
    """All active F_i equal to c sin(t / c): the round-sphere reference case."""
    d = (int(d0), int(d1), int(d2))
    _check_common(1.0, 1.0, c, d, t_max)
    if t_max >= math.pi * c:
        raise ProfileError("c sin(t / c) vanishes at pi c; t_max must be smaller")
    slots = tuple(Slot((TrigPiece(c),), (), c, True) if di else _zero_slot() for di in d)
    return WarpProfile("trig", 1.0, 1.0, c, d, slots, t_max)


def _matched_extension(limit: float, c: float, t_star: float) -> RationalPiece:
    """limit - kappa / (t + lam) agreeing with c sin(t / c) in value and slope at t_star."""
    gap = limit - c * math.sin(t_star / c)
    slope = math.cos(t_star / c)
    if gap <= 0 or slope <= 0:
        raise ProfileError(f"cannot match an increasing extension to {limit:.6g} at t = {t_star:.6g}")
    u = gap / slope
    return RationalPiece(limit, gap * u, u - t_star)


def build_modified_profile(a: float, b: float, c: float, d0: int, d1: int, d2: int,
                           epsilon: float, t_max: float) -> WarpProfile:
    """Sine up to epsilon before each crossing, then strictly concave rational tails.

    F_2 continues as c - 1/(t + lambda_2) (continuity only); F_1, F_0 continue as
    bc - kappa/(t + lambda), abc - kappa/(t + lambda) matched in value and slope.
    """
    d = (int(d0), int(d1), int(d2))
    _check_common(a, b, c, d, t_max)
    if (d[0] and a >= 1) or ((d[0] or d[1]) and b >= 1):
        raise ProfileError("the modified construction needs a, b < 1 on active blocks")
    t0, t1 = c * math.asin(a * b), c * math.asin(b)
    top = math.pi * c / 2.0
    crossings = [t for t, di in zip((t0, t1, top), d) if di]
    if not (0 < epsilon < min(crossings)):
        raise ProfileError(f"epsilon must lie in (0, {min(crossings):.6g}), got {epsilon}")
    trig = TrigPiece(c)

    t_star = top - epsilon
    lam2 = 1.0 / (c - c * math.sin(t_star / c)) - t_star
    tail2 = RationalPiece(c, 1.0, lam2)
    slots, lambdas, kappas = [], [], []
    for i, (scale, crossing) in enumerate(((a * b * c, t0), (b * c, t1))):
        if not d[i]:
            slots.append(_zero_slot())
            lambdas.append(None)
            kappas.append(None)
            continue
        tail = _matched_extension(scale, c, crossing - epsilon)
        slots.append(Slot((trig, tail), (crossing - epsilon,), scale, True))
        lambdas.append(tail.lam)
        kappas.append(tail.kappa)
    slots.append(Slot((trig, tail2), (t_star,), c, True) if d[2] else _zero_slot())
    lambdas.append(lam2 if d[2] else None)
    kappas.append(1.0 if d[2] else None)
    return WarpProfile("modified", a, b, c, d, tuple(slots), t_max, t0=t0, t1=t1, epsilon=epsilon,
                       lambdas=tuple(lambdas), kappas=tuple(kappas))


def smooth_profile(p: WarpProfile, delta: float) -> WarpProfile:
    if delta < 0:
        raise ProfileError("delta must be non-negative")
    if delta == 0:
        return replace(p, delta=0.0)
    for i, slot in enumerate(p.slots):
        edges = [0.0, *slot.breaks]
        gaps = np.diff(edges)
        if slot.breaks and delta >= 0.5 * float(np.min(gaps)):
            raise ProfileError(f"delta = {delta} overlaps the breakpoints of F{i}")
        for k, tb in enumerate(slot.breaks):
            for piece in slot.pieces[k:k + 2]:
                if isinstance(piece, RationalPiece) and tb - delta + piece.lam <= 0:
                    raise ProfileError(f"delta = {delta} reaches the pole of the F{i} extension")
    return replace(p, delta=float(delta))


def eval_profile(p: WarpProfile, t):
    """(F0, F1, F2, F0', F1', F2', F0'', F1'', F2'') at t in [0, t_max]."""
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t < 0) or np.any(t > p.t_max * (1 + 1e-12)):
        raise ProfileError(f"t outside [0, {p.t_max}]")
    F, dF, ddF = zip(*(p.eval_slot(i, t) for i in range(3)))
    out = (*F, *dF, *ddF)
    return tuple(float(v[0]) for v in out) if scalar else out


# -- Ricci functions ---------------------------------------------------------

def ric_limits_at_zero(p: WarpProfile) -> tuple[float, float, float, float]:
    """Values at t = 0, where every active F_i is c sin(t / c)."""
    d0, d1, d2 = p.d
    c2 = p.c**2
    vals = [sum(p.d) / c2, (d1 + d2 + 1) / c2, sum(p.d) / c2, sum(p.d) / c2]
    return tuple(v if (i == 0 or p.d[i - 1]) else math.nan for i, v in enumerate(vals))


def ric_from_values(d: Sequence[int], F, dF, ddF):
    """The four Ricci functions from values and derivatives of F_0, F_1, F_2.

    Terms weighted by a vanishing d_i are dropped; ric_i of an inactive block is nan.
    """
    d0, d1, d2 = d
    F0, F1, F2 = F
    r = [dF[i] / F[i] if d[i] else 0.0 for i in range(3)]
    q = [ddF[i] / F[i] if d[i] else 0.0 for i in range(3)]
    nan = np.full(np.shape(F2), np.nan)

    ric_t = -(d0 * q[0] + d1 * q[1] + d2 * q[2])
    if d0:
        ric_0 = ((d1 / F1**4 if d1 else 0.0) + (d2 / F2**4 if d2 else 0.0)) * F0**2 \
            - (d1 * r[1] + d2 * r[2]) * r[0] - q[0]
    else:
        ric_0 = nan
    if d1:
        x = F0**2 / F1**2
        ric_1 = (d0 * x + (d1 - 1) * (4.0 - 3.0 * x - dF[1] ** 2)) / F1**2 \
            + (d2 * F1**2 / F2**4 if d2 else 0.0) \
            - (d0 * r[0] + d2 * r[2]) * r[1] - q[1]
    else:
        ric_1 = nan
    if d2:
        ric_2 = (d0 * (3.0 - 2.0 * F0**2 / F2**2) + d1 * (3.0 - 2.0 * F1**2 / F2**2)
                 + (d2 - 1) * (1.0 - dF[2] ** 2)) / F2**2 \
            - (d0 * r[0] + d1 * r[1]) * r[2] - q[2]
    else:
        ric_2 = nan
    return ric_t + 0.0 * F2, ric_0 + 0.0 * F2, ric_1 + 0.0 * F2, ric_2 + 0.0 * F2


def ric_functions(p: WarpProfile, t):
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    v = eval_profile(p, t)
    F, dF, ddF = v[0:3], v[3:6], v[6:9]
    pos = t > 0
    for i in range(3):
        if p.d[i] and np.any(F[i][pos] <= 0):
            raise ProfileError(f"F{i} vanishes away from t = 0; degenerate profile")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = [np.asarray(x, dtype=float).copy() for x in ric_from_values(p.d, F, dF, ddF)]
    if not np.all(pos):
        for arr, lim in zip(out, ric_limits_at_zero(p)):
            arr[~pos] = lim
    return tuple(float(x[0]) for x in out) if scalar else tuple(out)


def ric_T(p: WarpProfile, t):
    return ric_functions(p, t)[0]


# -- Ric(A) for A in m -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BlockSplitting:
    algebra: LieAlgebraModel
    h: Subspace
    p: tuple[Subspace, Subspace, Subspace]
    m: Subspace

    @property
    def d(self) -> tuple[int, int, int]:
        return tuple(s.dim for s in self.p)


def block_splitting(G: LieAlgebraModel, h: Subspace, p0: Subspace, p1: Subspace, p2: Subspace,
                    tol: float = RANK_TOL) -> BlockSplitting:
    """Complete h + p0 + p1 + p2 (= k) by m = k^perp; blocks must be pairwise orthogonal."""
    blocks = [h, p0, p1, p2]
    for i in range(4):
        for j in range(i + 1, 4):
            if blocks[i].dim and blocks[j].dim and np.max(np.abs(blocks[i].basis @ blocks[j].basis.T)) > tol:
                raise ValueError("h, p0, p1, p2 must be pairwise Q-orthogonal")
    k = sum_subspaces(*blocks, tol=tol)
    if not h.is_subalgebra(tol) or not k.is_subalgebra(tol):
        raise ValueError("h and h + p must be subalgebras")
    return BlockSplitting(G, h, (p0, p1, p2), orthogonal_complement(G, k, tol))


def ric_A(s: BlockSplitting, A, f0: float, f1: float, f2: float, tol: float = RANK_TOL) -> float:
    A = np.asarray(A, dtype=float)
    if not s.m.contains(A, tol):
        raise ValueError("A must lie in m")
    f = (f0, f1, f2)
    total = 0.0
    for e in s.m.basis:
        Z = bracket(s.algebra, A, e)
        total += float(np.sum((s.h.basis @ Z) ** 2)) + 0.25 * float(np.sum((s.m.basis @ Z) ** 2))
        for i in range(3):
            if s.p[i].dim:
                total += (1.0 - 0.5 * f[i] ** 2) * float(np.sum((s.p[i].basis @ Z) ** 2))
    return total


# -- verification ------------------------------------------------------------

RIC_NAMES = ("ric_t", "ric_0", "ric_1", "ric_2")


def uniform_grid(t_max: float, grid_size: int) -> np.ndarray:
    return t_max * np.arange(1, grid_size + 1) / grid_size


@dataclass
class CurvatureReport:
    grid: np.ndarray
    values: dict[str, np.ndarray]
    minima: dict[str, Optional[float]]
    uniform_lower_bound: float
    tol: float
    nonnegative: bool
    uniformly_positive: bool
    f_range: dict[str, tuple[float, float]]
    f_in_unit_interval: bool
    max_second_derivative: dict[str, float]
    strictly_concave: bool
    ordered: bool
    slope_at_zero: dict[str, float]
    profile: dict

    def to_json(self) -> dict:
        return {
            "profile": self.profile,
            "grid": {"size": int(self.grid.size), "t_min": float(self.grid[0]), "t_max": float(self.grid[-1])},
            "minima": self.minima,
            "uniform_lower_bound": self.uniform_lower_bound,
            "tol": self.tol,
            "nonnegative": self.nonnegative,
            "uniformly_positive": self.uniformly_positive,
            "f_range": {k: list(v) for k, v in self.f_range.items()},
            "f_in_unit_interval": self.f_in_unit_interval,
            "max_second_derivative": self.max_second_derivative,
            "strictly_concave": self.strictly_concave,
            "ordered": self.ordered,
            "slope_at_zero": self.slope_at_zero,
        }


def profile_summary(p: WarpProfile) -> dict:
    def num(x):
        return None if x is None or (isinstance(x, float) and math.isnan(x)) else float(x)

    return {"variant": p.variant, "a": p.a, "b": p.b, "c": p.c, "d": list(p.d), "t0": num(p.t0),
            "t1": num(p.t1), "epsilon": p.epsilon, "delta": p.delta, "t_max": p.t_max,
            "lambdas": [num(x) for x in p.lambdas], "kappas": [num(x) for x in p.kappas]}


def verify_profile(p: WarpProfile, grid_size: int = 4096, tol: float = 1e-6) -> CurvatureReport:
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    t = uniform_grid(p.t_max, grid_size)
    values = dict(zip(RIC_NAMES, ric_functions(p, t)))
    active_ric = ["ric_t"] + [f"ric_{i}" for i in range(3) if p.d[i]]
    minima = {k: (float(np.min(v)) if k in active_ric else None) for k, v in values.items()}
    lower = min(minima[k] for k in active_ric)

    v = eval_profile(p, t)
    idx = [i for i in range(3) if p.d[i]]
    f_range, max_dd = {}, {}
    f_ok = True
    for i in idx:
        f = v[i] / p.slots[i].scale
        f_range[f"f{i}"] = (float(np.min(f)), float(np.max(f)))
        f_ok &= bool(np.min(f) >= -1e-12 and np.max(f) <= 1 + 1e-12)
        max_dd[f"F{i}"] = float(np.max(v[6 + i]))
    ordered = all(bool(np.all(v[i] <= v[j] + 1e-12)) for i, j in zip(idx, idx[1:]))
    slope0 = {f"f{i}": float(eval_profile(p, 0.0)[3 + i] / p.slots[i].scale) for i in idx}
    return CurvatureReport(
        grid=t, values=values, minima=minima, uniform_lower_bound=lower, tol=tol,
        nonnegative=lower >= -tol, uniformly_positive=lower >= tol,
        f_range=f_range, f_in_unit_interval=f_ok, max_second_derivative=max_dd,
        strictly_concave=all(x < 0 for x in max_dd.values()), ordered=ordered,
        slope_at_zero=slope0, profile=profile_summary(p))


CSV_HEADER = ("t", "F0", "F1", "F2", "dF0", "dF1", "dF2", "ric_t", "ric_0", "ric_1", "ric_2")


def break_points(p: WarpProfile) -> np.ndarray:
    """Junction times of the active slots inside (0, t_max]."""
    pts = {tb for i, s in enumerate(p.slots) if p.d[i] for tb in s.breaks if 0 < tb <= p.t_max}
    return np.array(sorted(pts), dtype=float)


def samples_csv(p: WarpProfile, grid_size: int, include_breaks: bool = False) -> str:
    t = uniform_grid(p.t_max, grid_size)
    if include_breaks:
        t = np.union1d(t, break_points(p))
    v = eval_profile(p, t)
    ric = ric_functions(p, t)
    cols = [t, *v[0:6], *ric]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in zip(*cols):
        writer.writerow([format(float(x), ".17g") for x in row])
    return buf.getvalue()
