"""Positive scalar curvature for homogeneous spaces and cohomogeneity one manifolds."""

__version__ = "0.1.0"

from .catalog import catalog_lookup, catalog_names  # noqa: E402
from .classify import Verdict, classify, classify_cohom1, classify_homogeneous  # noqa: E402
from .diagrams import DiagramKind, GroupDiagram, HomogeneousPair, SubgroupDescriptor  # noqa: E402
from .lie import LieAlgebraModel, Subspace, validate_algebra  # noqa: E402
from .warp import (build_gz_profile, build_modified_profile, smooth_profile, trig_profile,  # noqa: E402
                   verify_profile)

__all__ = [
    "DiagramKind", "GroupDiagram", "HomogeneousPair", "LieAlgebraModel", "SubgroupDescriptor",
    "Subspace", "Verdict", "build_gz_profile", "build_modified_profile", "catalog_lookup",
    "catalog_names", "classify", "classify_cohom1", "classify_homogeneous", "smooth_profile",
    "trig_profile", "validate_algebra", "verify_profile",
]
