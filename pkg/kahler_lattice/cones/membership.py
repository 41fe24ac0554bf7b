"""Membership in the positive, K-symplectic and canonical-positive cones.

Every decision returns a :class:`Certificate`. The K-symplectic cone of
Blowup(k) is cut out of the forward positive cone by the exceptional walls
``e.E > 0``. For k <= 8 there are finitely many walls and the complete table
settles the question. Otherwise a wall separating ``e`` from a reference
class ``h`` inside the cone crosses the segment [h, e], which bounds its
H-degree; only the walls of bounded degree need checking.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Literal, Optional

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.common.logging_config import internal_logger
from kahler_lattice.cones.certificate import (
    Certificate,
    ConeKind,
    FiniteCheck,
    Verdict,
    ViolatingClass,
    WitnessRole,
    orientation_class,
    segment_degree_bound,
)
from kahler_lattice.enumeration.classes import exceptional_classes, exceptional_classes_sliced
from kahler_lattice.lattice.model import AnyClass, IntClass, ManifoldModel, RayClass, pair, square

Method = Literal["auto", "table", "bounded"]


def reference_class(model: ManifoldModel) -> IntClass:
    """A class known to lie in the K-symplectic cone of ``model``.

    -K for 1 <= k <= 8, H for k = 0 and lH - sum(E_i) with l^2 > k beyond.
    """
    if not model.is_blowup:
        return IntClass.of(model, (1, 1))
    if model.k == 0:
        return model.H()
    if model.k <= 8:
        return -model.canonical_class()
    level = isqrt(model.k) + 1
    return IntClass.of(model, (level,) + (1,) * model.k)


def in_positive_cone(e: AnyClass) -> Certificate:
    """In when e.e > 0 and forward, Boundary for a forward null class, else Out."""
    q = RayClass.coerce(e)
    sq = Fraction(square(q))
    h0 = orientation_class(q.model)
    orient = pair(q, h0)
    if sq < 0:
        evidence = ViolatingClass(role=WitnessRole.SQUARE, witness=q, pairing=sq)
        return Certificate(cone=ConeKind.P, query=q, verdict=Verdict.OUT, evidence=evidence)
    if orient <= 0:
        evidence = ViolatingClass(role=WitnessRole.ORIENTATION, witness=h0.to_ray(), pairing=orient)
        return Certificate(cone=ConeKind.P, query=q, verdict=Verdict.OUT, evidence=evidence,
                           note="backward component")
    verdict = Verdict.IN if sq > 0 else Verdict.BOUNDARY
    if verdict is Verdict.BOUNDARY:
        evidence = ViolatingClass(role=WitnessRole.SQUARE, witness=q, pairing=sq)
        return Certificate(cone=ConeKind.P, query=q, verdict=verdict, evidence=evidence)
    return Certificate(cone=ConeKind.P, query=q, verdict=verdict,
                       evidence=FiniteCheck(square=sq, orientation=orient))


def _judge(q: RayClass, candidates: list[IntClass], **check) -> Certificate:
    pairings = [pair(q, c) for c in candidates]
    sq = Fraction(square(q))
    orient = pair(q, orientation_class(q.model))
    if pairings and min(pairings) < 0:
        worst = min(range(len(candidates)), key=lambda i: (pairings[i], candidates[i].sort_key()))
        evidence = ViolatingClass(role=WitnessRole.EXCEPTIONAL, witness=candidates[worst].to_ray(),
                                  pairing=pairings[worst])
        return Certificate(cone=ConeKind.CK, query=q, verdict=Verdict.OUT, evidence=evidence)
    touching = sq == 0 or (pairings and min(pairings) == 0)
    verdict = Verdict.BOUNDARY if touching else Verdict.IN
    evidence = FiniteCheck(square=sq, orientation=orient, candidates=tuple(candidates),
                           pairings=tuple(pairings), **check)
    return Certificate(cone=ConeKind.CK, query=q, verdict=verdict, evidence=evidence)


def in_CK(  # pylint: disable=invalid-name
    e: AnyClass,
    degree_bound: Optional[int] = None,
    method: Method = "auto",
    workers: int = 1,
) -> Certificate:
    """Decide membership in the K-symplectic cone.

    ``method="table"`` uses the complete exceptional table (k <= 8 only),
    ``"bounded"`` the segment argument, and ``"auto"`` picks the table when
    it exists. ``degree_bound`` caps the segment search; exceeding it
    raises E0302.
    """
    q = RayClass.coerce(e)
    model = q.model
    if not model.is_blowup:
        raise KahlerError(Code.E0101, message="The K-symplectic cone is defined on blow-up models")
    if method == "auto":
        method = "table" if model.k <= 8 else "bounded"
    if method == "table" and model.k > 8:
        raise KahlerError(Code.E0301, message="Complete exceptional tables exist only for k <= 8")
    table = list(exceptional_classes(model)) if method == "table" else []
    positive = in_positive_cone(q)
    if positive.verdict is Verdict.OUT:
        # an exceptional wall is the sharper witness when the table has one
        if any(pair(q, c) < 0 for c in table):
            return _judge(q, table, complete_table=True)
        return positive.relabel(ConeKind.CK)
    if method == "table":
        return _judge(q, table, complete_table=True)

    h = reference_class(model)
    if positive.verdict is Verdict.BOUNDARY:
        # no segment bound on the light cone; search up to the caller's bound
        if degree_bound is None:
            raise KahlerError(Code.E0302, message=f"{q.label()} is null; a degree bound is needed")
        needed = degree_bound
    else:
        needed = segment_degree_bound(h, q)
    if degree_bound is not None and needed > degree_bound:
        raise KahlerError(Code.E0302, message=f"Walls up to degree {needed} must be checked",
                          details={"required": needed, "bound": degree_bound})
    candidates = exceptional_classes_sliced(model, needed, workers) if needed >= 0 else []
    internal_logger.debug(f"Checked {len(candidates)} walls of degree <= {needed} for {q.label()}")
    return _judge(q, candidates, reference=h, degree_bound=needed)


def in_PK(  # pylint: disable=invalid-name
    e: AnyClass,
    degree_bound: Optional[int] = None,
    method: Method = "auto",
    workers: int = 1,
) -> Certificate:
    """K-symplectic and pairing positively with -K."""
    q = RayClass.coerce(e)
    model = q.model
    if not model.is_blowup:
        raise KahlerError(Code.E0101, message="The canonical-positive cone is defined on blow-up models")
    minus_k = -model.canonical_class()
    canonical = pair(q, minus_k)
    if canonical < 0:
        evidence = ViolatingClass(role=WitnessRole.CANONICAL, witness=minus_k.to_ray(), pairing=canonical)
        return Certificate(cone=ConeKind.PK, query=q, verdict=Verdict.OUT, evidence=evidence)
    ck = in_CK(q, degree_bound=degree_bound, method=method, workers=workers)
    if ck.verdict is Verdict.OUT:
        return ck.relabel(ConeKind.PK)
    evidence = ck.evidence.model_copy(update={"canonical": canonical})
    verdict = ck.verdict
    if canonical == 0:
        verdict = Verdict.BOUNDARY
    note = "on the K-wall" if canonical == 0 else None
    return Certificate(cone=ConeKind.PK, query=q, verdict=verdict, evidence=evidence, note=note)
