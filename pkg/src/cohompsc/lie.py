"""Compact Lie algebras given by structure constants in a Q-orthonormal basis.

Because the basis is orthonormal for the Ad-invariant inner product Q, Q is the
identity matrix and ad-invariance becomes the identity c[i,j,k] = c[j,k,i].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

RANK_TOL = 1e-9
IDENTITY_TOL = 1e-12


class LieAlgebraError(ValueError):
    """Raised for malformed algebra input or a failed structural decomposition."""


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LieAlgebraModel:
    """[e_i, e_j] = sum_k c[i, j, k] e_k with (e_i) orthonormal for Q."""

    structure_constants: np.ndarray
    label: str = ""

    def __post_init__(self):
        c = _frozen(self.structure_constants)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]) or c.shape[0] < 1:
            raise LieAlgebraError(f"structure constants must have shape (n, n, n), got {c.shape}")
        object.__setattr__(self, "structure_constants", c)

    @property
    def dim(self) -> int:
        return self.structure_constants.shape[0]

    @classmethod
    def from_triples(cls, dim: int, triples: Iterable[Sequence], label: str = "") -> "LieAlgebraModel":
        """Build from sparse [i, j, k, value] entries; omitted entries are zero."""
        c = np.zeros((dim, dim, dim))
        for entry in triples:
            if len(entry) != 4:
                raise LieAlgebraError(f"structure constant entry must be [i, j, k, value], got {entry!r}")
            i, j, k, v = entry
            if not all(isinstance(x, (int, np.integer)) for x in (i, j, k)):
                raise LieAlgebraError(f"indices must be integers, got {entry!r}")
            if not all(0 <= x < dim for x in (i, j, k)):
                raise LieAlgebraError(f"index out of range in {entry!r}")
            c[i, j, k] = float(v)
        return cls(c, label)

    def to_triples(self) -> list[list]:
        idx = np.argwhere(self.structure_constants != 0.0)
        return [[int(i), int(j), int(k), float(self.structure_constants[i, j, k])] for i, j, k in idx]

    def ad(self, X) -> np.ndarray:
        """Matrix of ad_X, column j holding [X, e_j]."""
        X = self._vec(X)
        return np.einsum("i,ijk->kj", X, self.structure_constants)

    def is_abelian(self, tol: float = RANK_TOL) -> bool:
        return center(self, tol).dim == self.dim

    def _vec(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.shape != (self.dim,):
            raise LieAlgebraError(f"expected a vector of length {self.dim}, got shape {X.shape}")
        return X


def bracket(L: LieAlgebraModel, X, Y) -> np.ndarray:
    X, Y = L._vec(X), L._vec(Y)
    return np.einsum("i,j,ijk->k", X, Y, L.structure_constants)


def validate_algebra(L: LieAlgebraModel, tol: float = IDENTITY_TOL) -> ValidationReport:
    c = L.structure_constants
    antisym = float(np.max(np.abs(c + c.transpose(1, 0, 2))))
    # [[e_i,e_j],e_k]_m = sum_l c[i,j,l] c[l,k,m], summed over cyclic (i,j,k)
    jj = np.einsum("ijl,lkm->ijkm", c, c)
    jacobi = float(np.max(np.abs(jj + jj.transpose(1, 2, 0, 3) + jj.transpose(2, 0, 1, 3))))
    # Q([e_i,e_j],e_k) = c[i,j,k], Q(e_i,[e_j,e_k]) = c[j,k,i]
    ad_inv = float(np.max(np.abs(c - c.transpose(1, 2, 0))))
    details = {"antisymmetry": antisym, "jacobi": jacobi, "ad_invariance": ad_inv}
    violations = [f"{name} violated by {v:.3e} > {tol:.1e}" for name, v in details.items() if v > tol]
    return ValidationReport(not violations, violations, details)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of a Lie algebra held as Q-orthonormal rows in the parent basis."""

    parent: LieAlgebraModel
    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=float).reshape(-1, self.parent.dim)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def projector(self) -> np.ndarray:
        return self.basis.T @ self.basis

    def project(self, X) -> np.ndarray:
        return self.basis.T @ (self.basis @ np.asarray(X, dtype=float))

    def contains(self, X, tol: float = RANK_TOL) -> bool:
        X = np.asarray(X, dtype=float)
        return float(np.linalg.norm(X - self.project(X))) <= tol * max(1.0, float(np.linalg.norm(X)))

    def is_subspace_of(self, other: "Subspace", tol: float = RANK_TOL) -> bool:
        return all(other.contains(v, tol) for v in self.basis)

    def equals(self, other: "Subspace", tol: float = RANK_TOL) -> bool:
        return self.dim == other.dim and self.is_subspace_of(other, tol)

    def is_subalgebra(self, tol: float = RANK_TOL) -> bool:
        B = self.basis
        return all(self.contains(bracket(self.parent, B[i], B[j]), tol)
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def canonical(self, tol: float = RANK_TOL) -> "Subspace":
        """Re-basis by projecting e_1, e_2, ... in order and orthonormalising."""
        return span(self.parent, self.projector, tol)


def _gram_schmidt(vectors: np.ndarray, dim: int, tol: float) -> np.ndarray:
    out: list[np.ndarray] = []
    for v in vectors:
        w = np.array(v, dtype=float)
        for _ in range(2):  # second pass for numerical orthogonality
            for u in out:
                w = w - (u @ w) * u
        n = np.linalg.norm(w)
        if n > tol:
            out.append(w / n)
    return np.array(out).reshape(-1, dim)


def span(L: LieAlgebraModel, vectors, tol: float = RANK_TOL) -> Subspace:
    """Orthonormal basis of the span of `vectors`, lowest-index vectors first."""
    vecs = np.asarray(vectors, dtype=float).reshape(-1, L.dim)
    return Subspace(L, _gram_schmidt(vecs, L.dim, tol))


def zero_subspace(L: LieAlgebraModel) -> Subspace:
    return Subspace(L, np.zeros((0, L.dim)))


def full_space(L: LieAlgebraModel) -> Subspace:
    return Subspace(L, np.eye(L.dim))


def _null_space(A: np.ndarray, tol: float) -> np.ndarray:
    n = A.shape[1]
    if A.size == 0:
        return np.eye(n)
    _, s, vt = np.linalg.svd(A)
    rank = int(np.sum(s > tol * max(1.0, s[0] if s.size else 0.0)))
    return vt[rank:]


def derived_subalgebra(L: LieAlgebraModel, tol: float = RANK_TOL) -> Subspace:
    c = L.structure_constants
    n = L.dim
    pairs = [c[i, j] for i in range(n) for j in range(i + 1, n)]
    return span(L, pairs, tol).canonical(tol) if pairs else zero_subspace(L)


def center(L: LieAlgebraModel, tol: float = RANK_TOL) -> Subspace:
    # X central iff sum_i X_i c[i, j, :] = 0 for every j
    A = L.structure_constants.transpose(1, 2, 0).reshape(L.dim * L.dim, L.dim)
    return span(L, _null_space(A, tol), tol).canonical(tol)


def orthogonal_complement(L: LieAlgebraModel, S: Subspace, tol: float = RANK_TOL) -> Subspace:
    if S.parent.dim != L.dim:
        raise LieAlgebraError(f"subspace lives in dimension {S.parent.dim}, algebra has {L.dim}")
    comp = np.eye(L.dim) - S.projector
    return span(L, comp, tol)


def sum_subspaces(*subspaces: Subspace, tol: float = RANK_TOL) -> Subspace:
    L = subspaces[0].parent
    return span(L, np.vstack([s.basis for s in subspaces]), tol).canonical(tol)


def intersection(S: Subspace, T: Subspace, tol: float = RANK_TOL) -> Subspace:
    if S.dim == 0 or T.dim == 0:
        return zero_subspace(S.parent)
    residual = (np.eye(S.parent.dim) - T.projector) @ S.basis.T
    coeffs = _null_space(residual, tol)
    return span(S.parent, coeffs @ S.basis, tol).canonical(tol)


def split_compact(L: LieAlgebraModel, tol: float = RANK_TOL) -> tuple[Subspace, Subspace]:
    """Return ([g, g], Z(g)); raise if they are not complementary and orthogonal."""
    derived, z = derived_subalgebra(L, tol), center(L, tol)
    if derived.dim + z.dim != L.dim:
        raise LieAlgebraError(
            f"{L.label or 'algebra'}: dim [g,g] + dim Z(g) = {derived.dim} + {z.dim} != {L.dim}; "
            "not of compact type")
    if derived.dim and z.dim and np.max(np.abs(derived.basis @ z.basis.T)) > tol:
        raise LieAlgebraError(f"{L.label or 'algebra'}: [g,g] and Z(g) are not Q-orthogonal")
    return derived, z


# -- catalog constructors -------------------------------------------------

def abelian(k: int, label: str | None = None) -> LieAlgebraModel:
    return LieAlgebraModel(np.zeros((k, k, k)), label or f"t{k}")


def su2(label: str = "su2") -> LieAlgebraModel:
    """[e1, e2] = e3 and cyclic permutations."""
    c = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[i, j, k] = 1.0
        c[j, i, k] = -1.0
    return LieAlgebraModel(c, label)


def direct_sum(*algebras: LieAlgebraModel, label: str | None = None) -> LieAlgebraModel:
    n = sum(a.dim for a in algebras)
    c = np.zeros((n, n, n))
    off = 0
    for a in algebras:
        s = slice(off, off + a.dim)
        c[s, s, s] = a.structure_constants
        off += a.dim
    return LieAlgebraModel(c, label or "+".join(a.label for a in algebras))
