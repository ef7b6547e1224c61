"""PSC decisions for homogeneous spaces and cohomogeneity one diagrams.

A verdict either carries a witness for positive scalar curvature (two
orthonormal vectors with non-zero bracket, or a non-trivial slice block) or
names the flat manifold the input must be.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Optional

import numpy as np

from .diagrams import (
    DiagramKind,
    GroupDiagram,
    HomogeneousPair,
    SubgroupDescriptor,
    finite_subgroups_equal,
    trivial_subgroup,
    validate_diagram,
    validate_pair,
)
from .lie import (
    RANK_TOL,
    LieAlgebraModel,
    Subspace,
    bracket,
    center,
    intersection,
    orthogonal_complement,
    span,
    split_compact,
)

FLAT_TYPES = ("Torus", "KleinTimesTorus", "ATimesTorus", "TorusTimesLine", "TorusTimesMoebius")

RAY_NOTE = ("statements (4) and (5) do not apply over a ray: R^n with O(n) carries both a flat "
            "metric and the torpedo metric; PSC over [0, oo) need not be uniformly positive")


class ClassificationError(RuntimeError):
    """Input passed validation but a step of the argument failed; the input is inconsistent."""


@dataclass(frozen=True)
class Witness:
    kind: str                      # "bracket" or "slice"
    where: str = ""                # subspace the witness lives in
    X: Optional[tuple[float, ...]] = None
    Y: Optional[tuple[float, ...]] = None
    norm: float = 0.0              # |[X, Y]|
    dim: int = 0                   # dimension of a non-trivial slice block

    def to_json(self) -> dict:
        if self.kind == "bracket":
            return {"kind": "bracket", "where": self.where, "X": list(self.X), "Y": list(self.Y),
                    "bracket_norm": self.norm}
        return {"kind": "slice", "where": self.where, "dim": self.dim}


@dataclass
class Verdict:
    psc: bool
    n: int
    flat_type: Optional[str] = None
    statements: list[tuple[int, bool, Optional[bool]]] = field(default_factory=list)
    witness: Optional[Witness] = None
    notes: list[str] = field(default_factory=list)

    @property
    def flat_label(self) -> Optional[str]:
        """Flat type with its dimension, e.g. "KleinTimesTorus(3)"."""
        return f"{self.flat_type}({self.n})" if self.flat_type else None

    def to_json(self) -> dict:
        return {
            "psc": self.psc,
            "flat_type": self.flat_label,
            "n": self.n,
            "statements": [{"id": i, "applicable": a, "value": v} for i, a, v in self.statements],
            "witness": self.witness.to_json() if self.witness else None,
            "notes": "; ".join(self.notes),
        }


def _statements(psc: bool, applicable: tuple[int, ...] = (1, 2, 3, 4, 5)):
    return [(i, i in applicable, psc if i in applicable else None) for i in range(1, 6)]


def sec_lower_bound(G: LieAlgebraModel, X, Y, tol: float = RANK_TOL) -> float:
    """Lower bound 1/4 |[X, Y]|^2 for the sectional curvature of G/H on orthonormal X, Y."""
    X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
    gram = np.array([[X @ X, X @ Y], [Y @ X, Y @ Y]])
    if np.max(np.abs(gram - np.eye(2))) > tol:
        raise ValueError("sec_lower_bound needs Q-orthonormal X, Y")
    Z = bracket(G, X, Y)
    return 0.25 * float(Z @ Z)


def _bracket_witness(G: LieAlgebraModel, S: Subspace, where: str, tol: float) -> Optional[Witness]:
    B = S.basis
    for i in range(S.dim):
        for j in range(i + 1, S.dim):
            Z = bracket(G, B[i], B[j])
            norm = float(np.linalg.norm(Z))
            if norm > tol:
                return Witness("bracket", where, tuple(B[i].tolist()), tuple(B[j].tolist()), norm)
    return None


def _brackets_vanish(G, A: Subspace, B: Subspace, tol: float) -> bool:
    return all(np.linalg.norm(bracket(G, x, y)) <= tol for x in A.basis for y in B.basis)


def proof_chain(G: LieAlgebraModel, h: Subspace, tol: float = RANK_TOL) -> dict[str, bool]:
    """The three consequences of [p, p] = 0 for p = h^perp."""
    p = orthogonal_complement(G, h, tol)
    derived, _ = split_compact(G, tol)
    return {
        "[p,h]=0": _brackets_vanish(G, p, h, tol),
        "p<=Z(g)": p.is_subspace_of(center(G, tol), tol),
        "[g,g]<=h": derived.is_subspace_of(h, tol),
    }


def classify_homogeneous(p: HomogeneousPair, tol: float = RANK_TOL) -> Verdict:
    report = validate_pair(p, tol)
    if not report.ok:
        raise ValueError("invalid homogeneous pair: " + "; ".join(report.violations))
    perp = orthogonal_complement(p.G, p.H.algebra, tol)
    w = _bracket_witness(p.G, perp, "p", tol)
    if w is not None:
        return Verdict(True, p.n, statements=_statements(True), witness=w)
    chain = proof_chain(p.G, p.H.algebra, tol)
    failed = [k for k, ok in chain.items() if not ok]
    if failed:
        raise ClassificationError(f"[p,p] = 0 but {', '.join(failed)} fails; input is not of compact type")
    notes = ["connected components are tori"] if p.H.component_count > 1 else []
    return Verdict(False, p.n, "Torus", _statements(False), notes=notes)


def flat_criterion(d: GroupDiagram, tol: float = RANK_TOL) -> tuple[bool, str]:
    if not d.G.is_abelian(tol):
        return False, "G is not abelian"
    if not d.H.is_trivial():
        return False, "principal isotropy H is not trivial"
    for name, K in d.singular_isotropies().items():
        if not K.is_z2():
            return False, f"non-principal isotropy {name} is not Z2"
    if d.kind in (DiagramKind.CIRCLE, DiagramKind.LINE):
        return True, "G abelian, H trivial, no non-principal orbits"
    return True, "G abelian, H trivial, non-principal isotropies are Z2"


def _cohom1_witness(d: GroupDiagram, tol: float) -> Optional[Witness]:
    singular = d.singular_isotropies()
    if not singular:
        return _bracket_witness(d.G, orthogonal_complement(d.G, d.H.algebra, tol), "p", tol)
    for name, K in singular.items():
        slice_block = intersection(K.algebra, orthogonal_complement(d.G, d.H.algebra, tol), tol)
        if slice_block.dim:
            return Witness("slice", where=f"p = k ({name}) minus h", dim=slice_block.dim)
    for name, K in singular.items():
        w = _bracket_witness(d.G, orthogonal_complement(d.G, K.algebra, tol), f"m ({name})", tol)
        if w is not None:
            return w
    return None


def classify_cohom1(d: GroupDiagram, tol: float = RANK_TOL) -> Verdict:
    notes: list[str] = []
    if d.G.is_abelian(tol) and d.H.dim == 0 and d.H.finite_generators and not d.H.is_trivial():
        d = effective_reduction(d)
        notes.append("reduced to an effective action by dividing out H")
    report = validate_diagram(d, tol)
    if not report.ok:
        raise ValueError("invalid group diagram: " + "; ".join(report.violations))

    if d.kind is DiagramKind.RAY:
        applicable = (1, 2, 3)
        notes.append(RAY_NOTE)
    else:
        applicable = (1, 2, 3, 4, 5)

    flat, why = flat_criterion(d, tol)
    if not flat:
        w = _cohom1_witness(d, tol)
        if w is None:
            raise ClassificationError(
                f"flat criterion fails ({why}) but no PSC witness exists: [g,g] lies in every "
                "isotropy algebra, so the action is not effective")
        return Verdict(True, d.n, statements=_statements(True, applicable), witness=w, notes=notes)

    if d.kind is DiagramKind.CIRCLE:
        flat_type = "Torus"
    elif d.kind is DiagramKind.LINE:
        flat_type = "TorusTimesLine"
    elif d.kind is DiagramKind.RAY:
        flat_type = "TorusTimesMoebius"
    elif finite_subgroups_equal(d.K_minus, d.K_plus):
        flat_type = "KleinTimesTorus"
    else:
        if d.n < 3:  # pragma: no cover - distinct Z2's need a 2-torus
            raise ClassificationError("distinct Z2 isotropies need n >= 3")
        flat_type = "ATimesTorus"
    notes.append(why)
    return Verdict(False, d.n, flat_type, _statements(False, applicable), notes=notes)


def classify(obj, tol: float = RANK_TOL) -> Verdict:
    if isinstance(obj, HomogeneousPair):
        return classify_homogeneous(obj, tol)
    return classify_cohom1(obj, tol)


# -- effective reduction for torus actions ---------------------------------

def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _integer_lattice_basis(rows: list[list[int]], k: int) -> list[list[int]]:
    """Row basis (Hermite form) of the integer lattice spanned by `rows`, all of rank k."""
    A = [list(r) for r in rows]
    basis = []
    for col in range(k):
        while True:
            nz = [r for r in A if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            pivot = nz[0]
            for r in nz[1:]:
                q = r[col] // pivot[col]
                for c in range(k):
                    r[c] -= q * pivot[c]
            A = [r for r in A if any(r)]
        pivots = [r for r in A if r[col] != 0]
        if not pivots:
            raise ValueError("lattice is not full rank")
        piv = pivots[0]
        A.remove(piv)
        basis.append(piv)
    return basis


def effective_reduction(d: GroupDiagram) -> GroupDiagram:
    """Divide a torus diagram by its finite principal isotropy H.

    T^k / H is again a torus; coordinates are changed by a basis of the lattice
    Z^k + H so that K / H is expressed in the new torus R^k / Z^k.
    """
    G = d.G
    if not G.is_abelian():
        raise ValueError("effective reduction is only supported for abelian G")
    if d.H.dim != 0:
        raise ValueError("effective reduction needs a zero-dimensional H")
    if d.H.is_trivial():
        return d
    k = G.dim
    gens = [[Fraction(x).limit_denominator(10**6) for x in g] for g in d.H.finite_generators]
    den = 1
    for g in gens:
        for x in g:
            den = _lcm(den, x.denominator)
    rows = [[den if i == j else 0 for j in range(k)] for i in range(k)]
    rows += [[int(x * den) for x in g] for g in gens]
    B = _integer_lattice_basis(rows, k)                 # rows generate den * (Z^k + H)
    Binv = _inverse_fraction_matrix([[Fraction(int(x), den) for x in r] for r in B])

    def recoord(v):
        # v = sum_i y_i B_i, new coordinates y = v B^{-1}
        y = [sum(Fraction(v[j]) * Binv[j][i] for j in range(k)) for i in range(k)]
        return tuple(float(x % 1) for x in y)

    def reduce(S: Optional[SubgroupDescriptor]) -> Optional[SubgroupDescriptor]:
        if S is None:
            return None
        alg = span(G, S.algebra.basis @ np.array(Binv, dtype=float))
        if S.finite_generators is None:
            return SubgroupDescriptor(alg, S.component_count)
        gens = [recoord([Fraction(x).limit_denominator(10**6) for x in g]) for g in S.finite_generators]
        gens = tuple(g for g in gens if any(x != 0 for x in g)) or None
        order = len(SubgroupDescriptor(alg, 1, gens).generated_elements()) if S.dim == 0 \
            else S.component_count
        return SubgroupDescriptor(alg, order, gens)

    return replace(d, H=trivial_subgroup(G), K_minus=reduce(d.K_minus), K_plus=reduce(d.K_plus),
                   K=reduce(d.K))


def _inverse_fraction_matrix(A) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]
