from kahler_lattice.lattice.model import (
    AnyClass,
    ClassInvariants,
    IntClass,
    ManifoldModel,
    ModelKind,
    RayClass,
    adjunction_number,
    canonical_pairing,
    class_from_coeffs,
    invariants,
    is_exceptional,
    is_spherical,
    j_dimension,
    j_genus,
    l_value,
    model_signature,
    pair,
    square,
)

__all__ = [
    "AnyClass",
    "ClassInvariants",
    "IntClass",
    "ManifoldModel",
    "ModelKind",
    "RayClass",
    "adjunction_number",
    "canonical_pairing",
    "class_from_coeffs",
    "invariants",
    "is_exceptional",
    "is_spherical",
    "j_dimension",
    "j_genus",
    "l_value",
    "model_signature",
    "pair",
    "square",
]
