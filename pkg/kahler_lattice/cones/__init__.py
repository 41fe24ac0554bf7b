from kahler_lattice.cones.cell import PCell, adapted_basis, is_corner, kappa, p_cell
from kahler_lattice.cones.certificate import (
    Certificate,
    ConeKind,
    Decomposition,
    DecompositionPart,
    FiniteCheck,
    Verdict,
    ViolatingClass,
    WitnessRole,
    orientation_class,
    replay_certificate,
)
from kahler_lattice.cones.decompose import decompose_SP, in_SK_plus
from kahler_lattice.cones.dual import DualCone, dual_cone_rays, dual_curve_cone
from kahler_lattice.cones.face import FaceTransport, face_extend, face_restrict, transport_to_last
from kahler_lattice.cones.membership import in_CK, in_PK, in_positive_cone, reference_class

__all__ = [
    "Certificate",
    "ConeKind",
    "Decomposition",
    "DecompositionPart",
    "DualCone",
    "FaceTransport",
    "FiniteCheck",
    "PCell",
    "Verdict",
    "ViolatingClass",
    "WitnessRole",
    "adapted_basis",
    "decompose_SP",
    "dual_cone_rays",
    "dual_curve_cone",
    "face_extend",
    "face_restrict",
    "in_CK",
    "in_PK",
    "in_SK_plus",
    "in_positive_cone",
    "is_corner",
    "kappa",
    "orientation_class",
    "p_cell",
    "reference_class",
    "replay_certificate",
    "transport_to_last",
]
