"""Nef tests, vanishing loci and the Taubes-class bookkeeping.

``is_nef`` is three-valued: a finite spec proves nefness only when one of
the covered criteria applies, and otherwise answers ``Unknown``.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.common.logging_config import internal_logger
from kahler_lattice.configs.spec import CurveConeSpec
from kahler_lattice.cones.certificate import orientation_class
from kahler_lattice.enumeration.classes import exceptional_classes
from kahler_lattice.lattice.model import (
    IntClass,
    ManifoldModel,
    RayClass,
    Rational,
    adjunction_number,
    pair,
    square,
)


class NefVerdict(str, Enum):
    NEF = "Nef"
    NOT_NEF = "NotNef"
    UNKNOWN = "Unknown"


class Criterion(str, Enum):
    SPEC_CLASS = "spec_class"
    CURVE_CONE = "curve_cone"
    EXCEPTIONAL_TABLE = "exceptional_table"
    PACKAGE = "package"
    DEGREE_SCREEN = "degree_screen"
    NONE = "none"


class NefResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    query: IntClass
    verdict: NefVerdict
    criterion: Criterion
    witness: Optional[IntClass] = None
    pairing: Optional[int] = None


def _package_member(e: IntClass) -> bool:
    """H, 2H, nH-(n-1)E_i, nH-(n-1)E_i-E_j or H-E_i."""
    a = e.coeffs[0]
    b = sorted((x for x in e.coeffs[1:] if x), reverse=True)
    if not b:
        return a in (1, 2)
    if any(x < 0 for x in b):
        return False
    if len(b) == 1:
        return b[0] == a - 1 or (a == 1 and b[0] == 1)
    return len(b) == 2 and b[1] == 1 and b[0] == a - 1 and a >= 2


def _first_negative(e: IntClass, classes: Sequence[IntClass]) -> Optional[IntClass]:
    worst = None
    for c in classes:
        value = pair(e, c)
        if value < 0 and (worst is None or (value, c.sort_key()) < (pair(e, worst), worst.sort_key())):
            worst = c
    return worst


def is_nef(e: IntClass, spec: CurveConeSpec) -> NefResult:
    if e.model != spec.model:
        raise KahlerError(Code.E0101, details={"class": str(e.model), "spec": str(spec.model)})
    model = e.model

    def result(verdict: NefVerdict, criterion: Criterion, witness: Optional[IntClass] = None) -> NefResult:
        value = pair(e, witness) if witness is not None else None
        return NefResult(query=e, verdict=verdict, criterion=criterion, witness=witness, pairing=value)

    witness = _first_negative(e, spec.negative_classes)
    if witness is not None:
        return result(NefVerdict.NOT_NEF, Criterion.SPEC_CLASS, witness)

    generators = spec.curve_cone_generators()
    if generators is not None:
        witness = _first_negative(e, generators)
        if witness is not None:
            return result(NefVerdict.NOT_NEF, Criterion.CURVE_CONE, witness)
        return result(NefVerdict.NEF, Criterion.CURVE_CONE)

    flags = spec.flags
    if (flags.top_stratum or flags.good) and model.k <= 8:
        # every negative curve is a -1 curve, every other curve is forward of square >= 0
        witness = _first_negative(e, list(exceptional_classes(model)))
        if witness is not None:
            return result(NefVerdict.NOT_NEF, Criterion.EXCEPTIONAL_TABLE, witness)
        if square(e) >= 0 and pair(e, orientation_class(model)) > 0:
            return result(NefVerdict.NEF, Criterion.EXCEPTIONAL_TABLE)

    k_disjoint = flags.disjoint_minus_ones == model.k or flags.top_stratum or flags.good
    if k_disjoint and model.k >= 1:
        if _package_member(e):
            return result(NefVerdict.NEF, Criterion.PACKAGE)
        a, b = e.coeffs[0], e.coeffs[1:]
        if all(x >= 0 for x in b) and a >= sum(b):
            return result(NefVerdict.NEF, Criterion.DEGREE_SCREEN)
    return result(NefVerdict.UNKNOWN, Criterion.NONE)


def _require_big_nef(e: IntClass, spec: CurveConeSpec) -> None:
    verdict = is_nef(e, spec)
    if verdict.verdict is not NefVerdict.NEF or square(e) <= 0:
        raise KahlerError(Code.E0502, message=f"{e.label()} is not big and nef for this spec",
                          details={"verdict": verdict.verdict.value, "square": square(e)})


def known_curves(spec: CurveConeSpec) -> tuple[IntClass, ...]:
    """Classes the spec knows to be irreducible curves."""
    found = list(spec.negative_classes)
    for c in spec.curve_cone_generators() or ():
        if c not in found:
            found.append(c)
    return tuple(sorted(found, key=lambda c: c.sort_key()))


def vanishing_locus(e: IntClass, spec: CurveConeSpec) -> list[IntClass]:
    """Known curve classes orthogonal to the big nef class e; empty means ample."""
    _require_big_nef(e, spec)
    return [c for c in known_curves(spec) if pair(e, c) == 0]


class TaubesClassResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    ok: bool
    classes: tuple[IntClass, ...]
    weights: tuple[Rational, ...]
    loci: tuple[tuple[IntClass, ...], ...]
    common: tuple[IntClass, ...] = ()
    total: Optional[RayClass] = None


def taubes_class(
    items: Sequence[tuple[IntClass, CurveConeSpec]],
    weights: Optional[Sequence[Fraction]] = None,
) -> TaubesClassResult:
    """Sum of big nef classes whose vanishing loci have empty common intersection.

    Fails naming the shared classes when every locus contains them.
    """
    if not items:
        raise KahlerError(Code.E0301, message="taubes_class needs at least one class")
    model = items[0][0].model
    ws = [Fraction(w) for w in weights] if weights is not None else [Fraction(1)] * len(items)
    if len(ws) != len(items) or any(w <= 0 for w in ws):
        raise KahlerError(Code.E0301, message="one positive weight per class is required")
    loci = []
    for e, spec in items:
        if e.model != model:
            raise KahlerError(Code.E0101, details={"left": str(model), "right": str(e.model)})
        loci.append(tuple(vanishing_locus(e, spec)))
    common = set(loci[0])
    for locus in loci[1:]:
        common &= set(locus)
    classes = tuple(e for e, _ in items)
    shared = tuple(sorted(common, key=lambda c: c.sort_key()))
    if shared:
        internal_logger.debug(f"Vanishing loci share {[c.label() for c in shared]}")
        return TaubesClassResult(ok=False, classes=classes, weights=tuple(ws), loci=tuple(loci), common=shared)
    total = sum((e.to_ray() * w for e, w in zip(classes, ws)), model.zero().to_ray())
    return TaubesClassResult(ok=True, classes=classes, weights=tuple(ws), loci=tuple(loci), total=total)


class ScreenReport(BaseModel):
    """Counts from the degree screen over curve-like classes."""

    k: int
    max_degree: int
    checked: int
    degree_violations: tuple[IntClass, ...] = ()
    fiber_violations: tuple[IntClass, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.degree_violations and not self.fiber_violations


def _screen_b(k: int, budget: int, cap: Optional[int] = None):
    """Non-increasing b_i >= 0 with sum(b_i^2 - b_i) <= budget."""
    if k == 0:
        yield ()
        return
    top = 1
    while (top + 1) * top <= budget:
        top += 1
    if cap is not None:
        top = min(top, cap)
    for first in range(top, -1, -1):
        cost = first * first - first
        if cost > budget:
            continue
        for rest in _screen_b(k - 1, budget - cost, first):
            yield (first, *rest)


def general_screen(k: int, max_degree: int) -> ScreenReport:
    """Check a >= b_i and "(H - E_1).c < 0 implies a <= 0" on classes with adjunction >= -2, b_i >= 0."""
    model = ManifoldModel.blowup(k)
    fiber = model.H() - model.E(1) if k >= 1 else None
    checked = 0
    degree_bad, fiber_bad = [], []
    for a in range(-max_degree, max_degree + 1):
        for b in _screen_b(k, (a - 1) * (a - 2)):
            c = IntClass.of(model, (a, *b))
            if adjunction_number(c) < -2:
                continue
            checked += 1
            if a > 0 and any(x > a for x in b):
                degree_bad.append(c)
            if fiber is not None and pair(c, fiber) < 0 and a > 0:
                fiber_bad.append(c)
    return ScreenReport(k=k, max_degree=max_degree, checked=checked,
                        degree_violations=tuple(degree_bad), fiber_violations=tuple(fiber_bad))
