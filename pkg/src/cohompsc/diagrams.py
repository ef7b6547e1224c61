"""Group diagrams of cohomogeneity one manifolds and homogeneous pairs.

Identity components are described by their Lie algebras inside g.  Finite
parts are only representable inside tori, as generators in R^k / Z^k with
entries in [0, 1); a Z_2 generator has entries in {0, 1/2}.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .lie import (
    RANK_TOL,
    LieAlgebraError,
    LieAlgebraModel,
    Subspace,
    ValidationReport,
    span,
    validate_algebra,
    zero_subspace,
)

MAX_FINITE_ORDER = 100_000


class DiagramError(ValueError):
    """Malformed diagram input (bad shapes, missing fields, unsupported data)."""


class DiagramKind(enum.Enum):
    CIRCLE = "circle"      # M/G = S^1
    INTERVAL = "interval"  # M/G = [-1, 1]
    LINE = "line"          # M/G = R
    RAY = "ray"            # M/G = [0, oo)

    @property
    def compact(self) -> bool:
        return self in (DiagramKind.CIRCLE, DiagramKind.INTERVAL)


def _as_fraction(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10**6) % 1


TorusElement = tuple[Fraction, ...]


@dataclass(frozen=True, eq=False)
class SubgroupDescriptor:
    algebra: Subspace
    component_count: int = 1
    finite_generators: Optional[tuple[tuple[float, ...], ...]] = None

    def __post_init__(self):
        if self.component_count < 1:
            raise DiagramError("component_count must be positive")
        if self.finite_generators is not None:
            gens = tuple(tuple(float(x) for x in g) for g in self.finite_generators)
            for g in gens:
                if len(g) != self.algebra.parent.dim:
                    raise DiagramError(f"finite generator {g} has wrong length")
                if any(x < 0 or x >= 1 for x in g):
                    raise DiagramError(f"finite generator entries must lie in [0, 1): {g}")
            object.__setattr__(self, "finite_generators", gens)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def generated_elements(self) -> frozenset[TorusElement]:
        """The finite subgroup of R^k/Z^k generated by the finite generators."""
        k = self.algebra.parent.dim
        gens = [tuple(_as_fraction(x) for x in g) for g in (self.finite_generators or ())]
        identity = tuple(Fraction(0) for _ in range(k))
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = tuple((a + b) % 1 for a, b in zip(x, g))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if len(seen) > MAX_FINITE_ORDER:
                raise DiagramError("finite generators do not generate a small finite group")
            frontier = nxt
        return frozenset(seen)

    def is_trivial(self) -> bool:
        if self.dim != 0 or self.component_count != 1:
            return False
        return self.finite_generators is None or len(self.generated_elements()) == 1

    def is_z2(self) -> bool:
        """Zero-dimensional with two components, realised by one order-two generator."""
        if self.dim != 0 or self.component_count != 2:
            return False
        if self.finite_generators is None:
            # no torus data: two components is all that can be said
            return True
        gens = [g for g in self.finite_generators if any(x != 0 for x in g)]
        if len(gens) != 1:
            return False
        return all(_as_fraction(x) in (0, Fraction(1, 2)) for x in gens[0])


def trivial_subgroup(G: LieAlgebraModel) -> SubgroupDescriptor:
    return SubgroupDescriptor(zero_subspace(G))


def finite_subgroups_equal(A: SubgroupDescriptor, B: SubgroupDescriptor) -> bool:
    if A.dim or B.dim:
        raise DiagramError("finite_subgroups_equal needs zero-dimensional subgroups")
    if A.algebra.parent.dim != B.algebra.parent.dim:
        raise DiagramError("subgroups live in tori of different dimensions")
    return A.generated_elements() == B.generated_elements()


@dataclass(frozen=True, eq=False)
class HomogeneousPair:
    G: LieAlgebraModel
    H: SubgroupDescriptor
    label: str = ""

    @property
    def n(self) -> int:
        return self.G.dim - self.H.dim


@dataclass(frozen=True, eq=False)
class GroupDiagram:
    kind: DiagramKind
    G: LieAlgebraModel
    H: SubgroupDescriptor
    K_minus: Optional[SubgroupDescriptor] = None
    K_plus: Optional[SubgroupDescriptor] = None
    K: Optional[SubgroupDescriptor] = None
    monodromy: Optional[np.ndarray] = None
    label: str = ""

    @property
    def n(self) -> int:
        return self.G.dim - self.H.dim + 1

    def singular_isotropies(self) -> dict[str, SubgroupDescriptor]:
        if self.kind is DiagramKind.INTERVAL:
            return {"K_minus": self.K_minus, "K_plus": self.K_plus}
        if self.kind is DiagramKind.RAY:
            return {"K": self.K}
        return {}

    def fiber(self) -> HomogeneousPair:
        return HomogeneousPair(self.G, self.H, self.label)


def _check_subgroup(name: str, S: SubgroupDescriptor, G: LieAlgebraModel, abelian: bool,
                    tol: float, out: list[str]) -> None:
    if S.algebra.parent.dim != G.dim:
        out.append(f"{name}: algebra lives in dimension {S.algebra.parent.dim}, G has {G.dim}")
        return
    if not S.algebra.is_subalgebra(tol):
        out.append(f"{name}: algebra is not closed under the bracket")
    if S.finite_generators is not None:
        if not abelian:
            out.append(f"{name}: finite generators are only supported when G is abelian")
        elif S.dim == 0:
            try:
                order = len(S.generated_elements())
            except DiagramError as exc:
                out.append(f"{name}: {exc}")
            else:
                if order != S.component_count:
                    out.append(f"{name}: generators give a group of order {order}, "
                               f"component_count is {S.component_count}")


def validate_pair(p: HomogeneousPair, tol: float = RANK_TOL) -> ValidationReport:
    out: list[str] = []
    alg = validate_algebra(p.G)
    out += [f"G: {v}" for v in alg.violations]
    abelian = p.G.is_abelian(tol)
    _check_subgroup("H", p.H, p.G, abelian, tol, out)
    if p.n < 2:
        out.append(f"dimension n = dim G - dim H = {p.n} < 2")
    return ValidationReport(not out, out, {"n": p.n})


def validate_diagram(d: GroupDiagram, tol: float = RANK_TOL) -> ValidationReport:
    out: list[str] = []
    details: dict = {"n": d.n, "z2": {}, "sphere_dim": {}}
    alg = validate_algebra(d.G)
    out += [f"G: {v}" for v in alg.violations]
    abelian = d.G.is_abelian(tol)
    _check_subgroup("H", d.H, d.G, abelian, tol, out)
    if abelian and not d.H.is_trivial():
        out.append("H: G is abelian, so an effective action needs trivial principal isotropy")
    if d.n < 2:
        out.append(f"dimension n = dim G - dim H + 1 = {d.n} < 2")

    required = {DiagramKind.INTERVAL: {"K_minus", "K_plus"}, DiagramKind.RAY: {"K"}}.get(d.kind, set())
    for name in ("K_minus", "K_plus", "K"):
        present = getattr(d, name) is not None
        if name in required and not present:
            out.append(f"{name}: required for a {d.kind.value} diagram")
        elif present and name not in required:
            out.append(f"{name}: not allowed for a {d.kind.value} diagram")

    for name, K in d.singular_isotropies().items():
        if K is None:
            continue
        _check_subgroup(name, K, d.G, abelian, tol, out)
        if K.algebra.parent.dim != d.G.dim:
            continue
        if not d.H.algebra.is_subspace_of(K.algebra, tol):
            out.append(f"containment: Lie algebra of H is not contained in that of {name}")
            continue
        sphere_dim = K.dim - d.H.dim
        details["sphere_dim"][name] = sphere_dim
        details["z2"][name] = K.is_z2()
        if sphere_dim == 0:
            ratio, rem = divmod(K.component_count, d.H.component_count)
            if rem or ratio != 2:
                out.append(f"{name}: {name}/H is zero-dimensional, so it must be S^0 with two "
                           f"elements; got component counts {K.component_count}/{d.H.component_count}")
            elif K.finite_generators is not None and d.H.finite_generators is not None:
                if not d.H.generated_elements() <= K.generated_elements():
                    out.append(f"containment: finite part of H is not contained in {name}")

    if d.monodromy is not None:
        M = np.asarray(d.monodromy, dtype=float)
        if d.kind is not DiagramKind.CIRCLE:
            out.append("monodromy: only allowed for circle diagrams")
        if M.shape != (d.G.dim, d.G.dim):
            out.append(f"monodromy: expected shape {(d.G.dim, d.G.dim)}, got {M.shape}")
        else:
            if np.max(np.abs(M.T @ M - np.eye(d.G.dim))) > tol:
                out.append("monodromy: not Q-orthogonal")
            if any(not d.H.algebra.contains(M @ v, tol) for v in d.H.algebra.basis):
                out.append("monodromy: does not preserve the Lie algebra of H")
            c = d.G.structure_constants
            lhs = np.einsum("ka,ijk->ija", M, c)                 # M [e_i, e_j]
            rhs = np.einsum("ai,bj,abk->ijk", M, M, c)           # [M e_i, M e_j]
            if np.max(np.abs(lhs - rhs)) > tol:
                out.append("monodromy: not a Lie algebra automorphism")
    return ValidationReport(not out, out, details)


# -- JSON ----------------------------------------------------------------

def _algebra_from_json(obj, catalog_algebra) -> LieAlgebraModel:
    if not isinstance(obj, dict):
        raise DiagramError("G must be an object")
    if "catalog" in obj:
        L = catalog_algebra(obj["catalog"])
        if not isinstance(L, LieAlgebraModel):
            raise DiagramError(f"catalog entry {obj['catalog']!r} is not a Lie algebra")
        return L
    try:
        return LieAlgebraModel.from_triples(int(obj["dim"]), obj.get("structure_constants", []),
                                            obj.get("label", ""))
    except KeyError as exc:
        raise DiagramError(f"G is missing field {exc}") from None
    except LieAlgebraError as exc:
        raise DiagramError(str(exc)) from None


def _subgroup_from_json(obj, G: LieAlgebraModel, name: str) -> SubgroupDescriptor:
    if obj is None:
        return trivial_subgroup(G)
    if not isinstance(obj, dict):
        raise DiagramError(f"{name} must be an object")
    try:
        basis = np.asarray(obj.get("basis") or np.zeros((0, G.dim)), dtype=float)
    except ValueError:
        raise DiagramError(f"{name}: basis must be a list of equal-length numeric vectors") from None
    if basis.ndim != 2 or basis.shape[1] != G.dim:
        raise DiagramError(f"{name}: basis vectors must have length {G.dim}")
    alg = span(G, basis)
    if alg.dim != basis.shape[0]:
        raise DiagramError(f"{name}: basis vectors are linearly dependent")
    gens = obj.get("finite_generators")
    return SubgroupDescriptor(alg, int(obj.get("components", 1)),
                              tuple(tuple(g) for g in gens) if gens else None)


def pair_from_json(obj, catalog_algebra) -> HomogeneousPair:
    G = _algebra_from_json(obj.get("G"), catalog_algebra)
    return HomogeneousPair(G, _subgroup_from_json(obj.get("H"), G, "H"), obj.get("label", ""))


def diagram_from_json(obj, catalog_algebra) -> GroupDiagram:
    try:
        kind = DiagramKind(obj["kind"])
    except (KeyError, ValueError):
        raise DiagramError(f"kind must be one of {[k.value for k in DiagramKind]}") from None
    G = _algebra_from_json(obj.get("G"), catalog_algebra)
    subs = {name: _subgroup_from_json(obj[name], G, name) if name in obj else None
            for name in ("K_minus", "K_plus", "K")}
    mono = obj.get("monodromy")
    return GroupDiagram(kind, G, _subgroup_from_json(obj.get("H"), G, "H"),
                        monodromy=np.asarray(mono, dtype=float) if mono is not None else None,
                        label=obj.get("label", ""), **subs)


def _algebra_to_json(L: LieAlgebraModel) -> dict:
    return {"dim": L.dim, "structure_constants": L.to_triples(), "label": L.label}


def _subgroup_to_json(S: SubgroupDescriptor) -> dict:
    out = {"basis": S.algebra.basis.tolist(), "components": S.component_count}
    if S.finite_generators is not None:
        out["finite_generators"] = [list(g) for g in S.finite_generators]
    return out


def to_json(obj: GroupDiagram | HomogeneousPair) -> dict:
    if isinstance(obj, HomogeneousPair):
        return {"kind": "homogeneous", "G": _algebra_to_json(obj.G), "H": _subgroup_to_json(obj.H),
                "label": obj.label}
    out = {"kind": obj.kind.value, "G": _algebra_to_json(obj.G), "H": _subgroup_to_json(obj.H),
           "label": obj.label}
    for name in ("K_minus", "K_plus", "K"):
        S = getattr(obj, name)
        if S is not None:
            out[name] = _subgroup_to_json(S)
    if obj.monodromy is not None:
        out["monodromy"] = np.asarray(obj.monodromy).tolist()
    return out


def from_json(obj, catalog_algebra) -> GroupDiagram | HomogeneousPair:
    """Parse a diagram, or a homogeneous pair when kind is absent or "homogeneous"."""
    if not isinstance(obj, dict):
        raise DiagramError("top-level JSON value must be an object")
    if obj.get("kind", "homogeneous") == "homogeneous":
        return pair_from_json(obj, catalog_algebra)
    return diagram_from_json(obj, catalog_algebra)


def loads(text: str, catalog_algebra):
    return from_json(json.loads(text), catalog_algebra)
