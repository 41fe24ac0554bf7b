from kahler_lattice.configs.census import (
    CensusResult,
    Configuration,
    DimensionReport,
    Part,
    Shape,
    check_dimension_bounds,
    classify_shape,
    enumerate_configurations,
)
from kahler_lattice.configs.nef import (
    NefResult,
    NefVerdict,
    ScreenReport,
    TaubesClassResult,
    general_screen,
    is_nef,
    known_curves,
    taubes_class,
    vanishing_locus,
)
from kahler_lattice.configs.spec import BundleCase, CurveConeSpec, SpecFlags, SphereBundleCase

__all__ = [
    "BundleCase",
    "CensusResult",
    "Configuration",
    "CurveConeSpec",
    "DimensionReport",
    "NefResult",
    "NefVerdict",
    "Part",
    "ScreenReport",
    "Shape",
    "SpecFlags",
    "SphereBundleCase",
    "TaubesClassResult",
    "check_dimension_bounds",
    "classify_shape",
    "enumerate_configurations",
    "general_screen",
    "is_nef",
    "known_curves",
    "taubes_class",
    "vanishing_locus",
]
