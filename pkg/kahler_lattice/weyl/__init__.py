from kahler_lattice.weyl.classification import NormalFormType, classify_normal_form
from kahler_lattice.weyl.reflection import (
    Equivalence,
    ReductionWord,
    Root,
    cremona_reduce,
    is_equivalent,
    normal_form,
    reduction_measure,
    reflect,
    simple_roots,
    weyl_orbit,
)

__all__ = [
    "NormalFormType",
    "classify_normal_form",
    "Equivalence",
    "ReductionWord",
    "Root",
    "cremona_reduce",
    "is_equivalent",
    "normal_form",
    "reduction_measure",
    "reflect",
    "simple_roots",
    "weyl_orbit",
]
