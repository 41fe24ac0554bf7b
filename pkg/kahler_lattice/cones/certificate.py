"""Certificates returned by cone decisions and their independent replayer.

``replay_certificate`` re-derives every claim from pairing arithmetic alone.
It never calls the enumerators or the decision procedures that produced
the certificate.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from kahler_lattice.enumeration.tables import EXCEPTIONAL_COUNTS
from kahler_lattice.lattice.model import (
    IntClass,
    ManifoldModel,
    RayClass,
    Rational,
    adjunction_number,
    canonical_pairing,
    pair,
    square,
)
from kahler_lattice.weyl.reflection import ReductionWord


class Verdict(str, Enum):
    IN = "In"
    OUT = "Out"
    BOUNDARY = "Boundary"


class ConeKind(str, Enum):
    P = "P"
    CK = "CK"
    PK = "PK"
    SK_PLUS = "SK+"


class WitnessRole(str, Enum):
    SQUARE = "square"
    ORIENTATION = "orientation"
    EXCEPTIONAL = "exceptional"
    CANONICAL = "canonical"


def orientation_class(model: ManifoldModel) -> IntClass:
    """Reference class picking the forward component of the positive cone."""
    if not model.is_blowup:
        return IntClass.of(model, (1, 1))
    if model.k <= 8:
        return -model.canonical_class()
    return model.H()


class ViolatingClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["violating_class"] = "violating_class"
    role: WitnessRole
    witness: RayClass
    pairing: Rational


class DecompositionPart(BaseModel):
    model_config = ConfigDict(frozen=True)

    part: IntClass
    weight: Rational


class Decomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["decomposition"] = "decomposition"
    parts: tuple[DecompositionPart, ...]


class FiniteCheck(BaseModel):
    """Every exceptional class that could matter, with its pairing."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["finite_check"] = "finite_check"
    square: Rational
    orientation: Rational
    canonical: Optional[Rational] = None
    complete_table: bool = False
    degree_bound: Optional[int] = None
    reference: Optional[IntClass] = None
    word: Optional[ReductionWord] = None
    candidates: tuple[IntClass, ...] = ()
    pairings: tuple[Rational, ...] = ()


Evidence = Annotated[Union[ViolatingClass, Decomposition, FiniteCheck], Field(discriminator="kind")]


class Certificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    cone: ConeKind
    query: RayClass
    verdict: Verdict
    evidence: Evidence
    note: Optional[str] = None

    def relabel(self, cone: ConeKind, note: Optional[str] = None) -> "Certificate":
        return self.model_copy(update={"cone": cone, "note": note or self.note})


def segment_degree_bound(reference: RayClass | IntClass, e: RayClass | IntClass) -> int:
    """Largest H-degree an exceptional wall between ``reference`` and ``e`` can have.

    A wall E with E.x = 0 for x on the segment satisfies
    a_E^2 < (x.H)^2 / x^2 <= max(H.h, H.e)^2 / min(h^2, e^2).
    """
    top = max(Fraction(reference.coeffs[0]), Fraction(e.coeffs[0])) ** 2
    low = min(Fraction(square(reference)), Fraction(square(e)))
    limit = top / low
    d = 0
    while (d + 1) ** 2 < limit:
        d += 1
    return d


def _is_exceptional(e: IntClass) -> bool:
    return square(e) == -1 and canonical_pairing(e) == -1


def _replay_violation(cert: Certificate, ev: ViolatingClass) -> bool:
    q = cert.query
    if ev.witness.model != q.model:
        return False
    if pair(q, ev.witness) != ev.pairing:
        return False
    if ev.role is WitnessRole.SQUARE:
        if ev.witness != q:
            return False
    elif ev.role is WitnessRole.ORIENTATION:
        if ev.witness != orientation_class(q.model).to_ray():
            return False
    elif ev.role is WitnessRole.CANONICAL:
        if ev.witness != (-q.model.canonical_class()).to_ray():
            return False
    elif ev.role is WitnessRole.EXCEPTIONAL:
        if not ev.witness.is_integral() or not _is_exceptional(ev.witness.to_int()):
            return False
    if cert.verdict is Verdict.OUT:
        if ev.role is WitnessRole.ORIENTATION:
            return ev.pairing <= 0
        return ev.pairing < 0
    if cert.verdict is Verdict.BOUNDARY:
        # a null class in the forward cone
        orient = pair(q, orientation_class(q.model))
        return ev.role is WitnessRole.SQUARE and ev.pairing == 0 and orient > 0
    return False


def _replay_decomposition(cert: Certificate, ev: Decomposition) -> bool:
    q = cert.query
    if cert.verdict is not Verdict.IN or not ev.parts:
        return False
    total = RayClass.of(q.model, (0,) * q.model.rank)
    for part in ev.parts:
        c = part.part
        if c.model != q.model or part.weight <= 0:
            return False
        if adjunction_number(c) != -2 or square(c) <= 0:
            return False
        total = total + c.to_ray() * part.weight
    return total == q


def _replay_finite_check(cert: Certificate, ev: FiniteCheck) -> bool:
    q = cert.query
    model = q.model
    if Fraction(square(q)) != ev.square:
        return False
    if pair(q, orientation_class(model)) != ev.orientation or ev.orientation <= 0:
        return False
    if cert.cone is ConeKind.P:
        return cert.verdict is Verdict.IN and ev.square > 0 and not ev.candidates
    if len(ev.candidates) != len(ev.pairings):
        return False
    for c, value in zip(ev.candidates, ev.pairings):
        if c.model != model or not _is_exceptional(c) or pair(q, c) != value:
            return False
    if len(set(ev.candidates)) != len(ev.candidates):
        return False
    if ev.complete_table:
        if not model.is_blowup or EXCEPTIONAL_COUNTS.get(model.k) != len(ev.candidates):
            return False
    else:
        if ev.reference is None or ev.degree_bound is None:
            return False
        if ev.square > 0 and segment_degree_bound(ev.reference, q) > ev.degree_bound:
            return False
        if any(c.coeffs[0] > ev.degree_bound for c in ev.candidates):
            return False
    if ev.word is not None and not ev.word.replay():
        return False
    canonical = ev.canonical
    if canonical is not None and pair(q, -model.canonical_class()) != canonical:
        return False
    smallest = min(ev.pairings, default=None)
    if cert.verdict is Verdict.IN:
        return ev.square > 0 and (smallest is None or smallest > 0) and (canonical is None or canonical > 0)
    if cert.verdict is Verdict.BOUNDARY:
        if smallest is not None and smallest < 0:
            return False
        if ev.square < 0:
            return False
        touching = (smallest == 0) or (canonical == 0) or ev.square == 0
        return touching and (canonical is None or canonical >= 0)
    return False


def replay_certificate(cert: Certificate) -> bool:
    """True when the evidence supports the verdict by pairing arithmetic."""
    ev = cert.evidence
    if isinstance(ev, ViolatingClass):
        return _replay_violation(cert, ev)
    if isinstance(ev, Decomposition):
        return _replay_decomposition(cert, ev)
    return _replay_finite_check(cert, ev)
