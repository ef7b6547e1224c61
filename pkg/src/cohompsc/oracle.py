"""Independent checks of the warping-profile numerics.

Nothing here calls the Ricci-function code in `warp`: derivatives are audited by
central differences of F alone, and the abelian case is recomputed from the
Christoffel symbols of the diagonal metric dt^2 + F_2(t)^2 (dx_1^2 + ... + dx_k^2).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .warp import WarpProfile, eval_profile, ric_functions, uniform_grid

FD_STEP = 1e-4
FD_TOL = 1e-5
CHRISTOFFEL_TOL = 1e-7


def central_differences(f, t: np.ndarray, h: float = FD_STEP):
    """First and second central differences, each with one Richardson step."""
    def d1(step):
        return (f(t + step) - f(t - step)) / (2 * step)

    def d2(step):
        return (f(t + step) - 2 * f(t) + f(t - step)) / step**2

    return (4 * d1(h / 2) - d1(h)) / 3, (4 * d2(h / 2) - d2(h)) / 3


def christoffel(g: np.ndarray, dg: np.ndarray) -> np.ndarray:
    """Gamma[k, i, j] from g[i, j] and dg[l, i, j] = d_l g[i, j]."""
    ginv = np.linalg.inv(g)
    # lower[i, j, l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    lower = 0.5 * (np.einsum("ijl->ijl", dg) + np.einsum("jil->ijl", dg) - np.einsum("lij->ijl", dg))
    return np.einsum("kl,ijl->kij", ginv, lower)


def ricci_tensor(g, dg, ddg) -> np.ndarray:
    """Ricci tensor R_{bd} = R^a_{bad} of a metric given with its first and second partials.

    ddg[m, l, i, j] = d_m d_l g[i, j].
    """
    n = g.shape[0]
    ginv = np.linalg.inv(g)
    Gam = christoffel(g, dg)
    lower = 0.5 * (np.einsum("ijl->ijl", dg) + np.einsum("jil->ijl", dg) - np.einsum("lij->ijl", dg))
    dlower = 0.5 * (np.einsum("mijl->mijl", ddg) + np.einsum("mjil->mijl", ddg) - np.einsum("mlij->mijl", ddg))
    dginv = -np.einsum("ka,mab,bl->mkl", ginv, dg, ginv)
    # dGam[m, k, i, j] = d_m Gamma^k_ij
    dGam = np.einsum("mkl,ijl->mkij", dginv, lower) + np.einsum("kl,mijl->mkij", ginv, dlower)
    # R^a_{b c d} = d_c Gam^a_{db} - d_d Gam^a_{cb} + Gam^a_{ce} Gam^e_{db} - Gam^a_{de} Gam^e_{cb}
    R = (np.einsum("cadb->abcd", dGam) - np.einsum("dacb->abcd", dGam)
         + np.einsum("ace,edb->abcd", Gam, Gam) - np.einsum("ade,ecb->abcd", Gam, Gam))
    assert R.shape == (n, n, n, n)
    return np.einsum("abad->bd", R)


def warped_torus_ricci(F: float, dF: float, ddF: float, k: int) -> tuple[float, float]:
    """Unit-vector Ricci curvatures (radial, fibre) of dt^2 + F(t)^2 (flat k-torus)."""
    n = k + 1
    g = np.diag([1.0] + [F**2] * k)
    dg = np.zeros((n, n, n))
    ddg = np.zeros((n, n, n, n))
    dg[0] = np.diag([0.0] + [2 * F * dF] * k)
    ddg[0, 0] = np.diag([0.0] + [2 * dF**2 + 2 * F * ddF] * k)
    Ric = ricci_tensor(g, dg, ddg)
    return float(Ric[0, 0]), float(Ric[1, 1] / g[1, 1])


@dataclass
class OracleReport:
    derivative_max_error: dict[str, float]
    derivative_ok: bool
    christoffel_checked: bool
    christoffel_max_error: dict[str, float] = field(default_factory=dict)
    christoffel_ok: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.derivative_ok and self.christoffel_ok

    def to_json(self) -> dict:
        return {"derivative_max_error": self.derivative_max_error, "derivative_ok": self.derivative_ok,
                "christoffel_checked": self.christoffel_checked,
                "christoffel_max_error": self.christoffel_max_error,
                "christoffel_ok": self.christoffel_ok, "notes": self.notes}


def fd_oracle(p: WarpProfile, grid_size: int = 4096, h: float = FD_STEP) -> OracleReport:
    t = uniform_grid(p.t_max, grid_size)[:-1]          # interior points
    t = t[(t - h >= 0) & (t + h <= p.t_max)]
    v = eval_profile(p, t)
    errs: dict[str, float] = {}
    ok = True
    for i in range(3):
        if not p.d[i]:
            continue
        fd1, fd2 = central_differences(lambda s, i=i: eval_profile(p, s)[i], t, h)
        dF, ddF = v[3 + i], v[6 + i]
        e1 = np.abs(fd1 - dF) / (1 + np.abs(dF))
        e2 = np.abs(fd2 - ddF) / (1 + np.abs(ddF))
        errs[f"dF{i}"], errs[f"ddF{i}"] = float(e1.max()), float(e2.max())
        ok &= bool(e1.max() <= FD_TOL and e2.max() <= FD_TOL)
    report = OracleReport(errs, ok, christoffel_checked=False)

    if p.d[0] == 0 and p.d[1] == 0:
        k = p.d[2]
        ric = ric_functions(p, t)
        oracle = np.array([warped_torus_ricci(F, dF, ddF, k) for F, dF, ddF in zip(v[2], v[5], v[8])])
        report.christoffel_checked = True
        report.christoffel_max_error["ric_t"] = float(np.max(np.abs(oracle[:, 0] - ric[0])))
        if k == 1:
            report.christoffel_max_error["ric_2"] = float(np.max(np.abs(oracle[:, 1] - ric[3])))
        else:
            report.notes.append("ric_2 carries the (d2 - 1)/F2^2 term of a curved homogeneous fibre; "
                                "compared only for d2 = 1")
        report.christoffel_ok = all(e <= CHRISTOFFEL_TOL for e in report.christoffel_max_error.values())
    return report
