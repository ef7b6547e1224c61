"""Built-in Lie algebras, homogeneous pairs and group diagrams."""
from __future__ import annotations

from typing import Callable

import numpy as np

from .diagrams import (
    DiagramKind,
    GroupDiagram,
    HomogeneousPair,
    SubgroupDescriptor,
    trivial_subgroup,
    validate_diagram,
    validate_pair,
)
from .lie import LieAlgebraModel, abelian, direct_sum, full_space, span, su2, validate_algebra


def _z2(G: LieAlgebraModel, gen) -> SubgroupDescriptor:
    return SubgroupDescriptor(span(G, []), 2, (tuple(gen),))


def _whole(G: LieAlgebraModel) -> SubgroupDescriptor:
    return SubgroupDescriptor(full_space(G))


def _u1(G: LieAlgebraModel) -> SubgroupDescriptor:
    return SubgroupDescriptor(span(G, [[0.0, 0.0, 1.0]]))


def _t2_circle():
    G = abelian(2)
    return GroupDiagram(DiagramKind.CIRCLE, G, trivial_subgroup(G), label="diagram:t2-circle")


def _klein_bottle_x_s1():
    G = abelian(2)
    return GroupDiagram(DiagramKind.INTERVAL, G, trivial_subgroup(G),
                        K_minus=_z2(G, (0.5, 0.0)), K_plus=_z2(G, (0.5, 0.0)),
                        label="diagram:klein-bottle-x-s1")


def _a_3mfd():
    G = abelian(2)
    return GroupDiagram(DiagramKind.INTERVAL, G, trivial_subgroup(G),
                        K_minus=_z2(G, (0.5, 0.0)), K_plus=_z2(G, (0.0, 0.5)),
                        label="diagram:A-3mfd")


def _t1_line():
    G = abelian(1)
    return GroupDiagram(DiagramKind.LINE, G, trivial_subgroup(G), label="diagram:t1-line")


def _t1_ray_z2():
    G = abelian(1)
    return GroupDiagram(DiagramKind.RAY, G, trivial_subgroup(G), K=_z2(G, (0.5,)),
                        label="diagram:t1-ray-z2")


def _t1_ray_disk():
    G = abelian(1)
    return GroupDiagram(DiagramKind.RAY, G, trivial_subgroup(G), K=_whole(G),
                        label="diagram:t1-ray-disk")


def _su2_interval():
    G = su2()
    return GroupDiagram(DiagramKind.INTERVAL, G, trivial_subgroup(G), K_minus=_whole(G),
                        K_plus=_whole(G), label="diagram:su2-interval")


def _su2_ray():
    G = su2()
    return GroupDiagram(DiagramKind.RAY, G, trivial_subgroup(G), K=_whole(G), label="diagram:su2-ray")


def _su2_u1_ray():
    G = su2()
    return GroupDiagram(DiagramKind.RAY, G, _u1(G), K=_whole(G), label="diagram:su2-u1-ray")


def _su2_u1_circle():
    G = su2()
    # Ad of the Weyl element: rotation by pi about e1, normalises the circle through e3
    return GroupDiagram(DiagramKind.CIRCLE, G, _u1(G), monodromy=np.diag([1.0, -1.0, -1.0]),
                        label="diagram:su2-u1-circle")


def _su2_t1_line():
    G = direct_sum(su2(), abelian(1), label="su2+t1")
    return GroupDiagram(DiagramKind.LINE, G, SubgroupDescriptor(span(G, [[0, 0, 1, 0]])),
                        label="diagram:su2xt1-line")


def _hom_su2_u1():
    G = su2()
    return HomogeneousPair(G, _u1(G), "homogeneous:su2-u1")


def _hom_su2():
    G = su2()
    return HomogeneousPair(G, trivial_subgroup(G), "homogeneous:su2")


def _hom_t3():
    G = abelian(3)
    return HomogeneousPair(G, trivial_subgroup(G), "homogeneous:t3")


def _hom_su2_t2_quotient():
    G = direct_sum(su2(), abelian(2), label="su2+t2")
    return HomogeneousPair(G, SubgroupDescriptor(span(G, np.eye(5)[:3])), "homogeneous:su2xt2/su2")


_ENTRIES: dict[str, tuple[Callable[[], object], str]] = {
    "t1": (lambda: abelian(1), "abelian Lie algebra of the circle"),
    "t2": (lambda: abelian(2), "abelian Lie algebra of the 2-torus"),
    "t3": (lambda: abelian(3), "abelian Lie algebra of the 3-torus"),
    "t4": (lambda: abelian(4), "abelian Lie algebra of the 4-torus"),
    "su2": (lambda: su2("su2"), "su(2), [e1,e2]=e3 cyclic"),
    "so3": (lambda: su2("so3"), "so(3), same constants as su(2)"),
    "su2+t1": (lambda: direct_sum(su2(), abelian(1), label="su2+t1"), "u(2) = su(2) + t^1"),
    "su2+t2": (lambda: direct_sum(su2(), abelian(2), label="su2+t2"), "su(2) + t^2"),
    "su2+t3": (lambda: direct_sum(su2(), abelian(3), label="su2+t3"), "su(2) + t^3"),
    "su2+su2": (lambda: direct_sum(su2(), su2(), label="su2+su2"), "so(4) = su(2) + su(2)"),
    "diagram:t2-circle": (_t2_circle, "T^2 on T^3 over a circle (flat T^3)"),
    "diagram:klein-bottle-x-s1": (_klein_bottle_x_s1, "T^2, e, Z2, Z2 with K- = K+ (flat K x S^1)"),
    "diagram:A-3mfd": (_a_3mfd, "T^2, e, Z2(1/2,0), Z2(0,1/2) (flat A)"),
    "diagram:t1-line": (_t1_line, "S^1 on S^1 x R (flat)"),
    "diagram:t1-ray-z2": (_t1_ray_z2, "S^1, e, Z2 over a ray (open Moebius band)"),
    "diagram:t1-ray-disk": (_t1_ray_disk, "SO(2) on R^2 (PSC, not uniformly)"),
    "diagram:su2-interval": (_su2_interval, "SU(2), e, SU(2), SU(2) (S^4)"),
    "diagram:su2-ray": (_su2_ray, "SU(2), e, SU(2) over a ray (R^4)"),
    "diagram:su2-u1-ray": (_su2_u1_ray, "SU(2), U(1), SU(2) over a ray (R^3)"),
    "diagram:su2-u1-circle": (_su2_u1_circle, "S^2 bundle over S^1 with Weyl-element monodromy"),
    "diagram:su2xt1-line": (_su2_t1_line, "(SU(2) x S^1)/U(1) x R = S^2 x S^1 x R"),
    "homogeneous:su2-u1": (_hom_su2_u1, "SU(2)/U(1) = S^2"),
    "homogeneous:su2": (_hom_su2, "SU(2) = S^3"),
    "homogeneous:t3": (_hom_t3, "T^3"),
    "homogeneous:su2xt2/su2": (_hom_su2_t2_quotient, "(SU(2) x T^2)/SU(2) = T^2"),
}


def catalog_names() -> list[str]:
    return list(_ENTRIES)


def catalog_description(name: str) -> str:
    return _ENTRIES[name][1]


def catalog_lookup(name: str):
    """Return the validated catalog object called `name`."""
    try:
        factory = _ENTRIES[name][0]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}") from None
    obj = factory()
    if isinstance(obj, LieAlgebraModel):
        report = validate_algebra(obj)
    elif isinstance(obj, HomogeneousPair):
        report = validate_pair(obj)
    else:
        report = validate_diagram(obj)
    if not report.ok:  # pragma: no cover - catalog is fixed
        raise RuntimeError(f"catalog entry {name} failed validation: {report.violations}")
    return obj


def catalog_algebra(name: str) -> LieAlgebraModel:
    obj = catalog_lookup(name)
    if not isinstance(obj, LieAlgebraModel):
        raise KeyError(f"catalog entry {name!r} is not a Lie algebra")
    return obj
