from kahler_lattice.enumeration.classes import (
    exceptional_classes,
    exceptional_classes_lattice,
    exceptional_classes_sliced,
    is_k_effective,
    spherical_classes,
)
from kahler_lattice.enumeration.selector import select_He
from kahler_lattice.enumeration.short_vectors import box_search, short_vectors
from kahler_lattice.enumeration.tables import (
    CacheProvenance,
    CacheStatus,
    ClassTable,
    ClassTag,
    SquareFilter,
    TableCache,
)

__all__ = [
    "CacheProvenance",
    "CacheStatus",
    "ClassTable",
    "ClassTag",
    "SquareFilter",
    "TableCache",
    "box_search",
    "exceptional_classes",
    "exceptional_classes_lattice",
    "exceptional_classes_sliced",
    "is_k_effective",
    "select_He",
    "short_vectors",
    "spherical_classes",
]
