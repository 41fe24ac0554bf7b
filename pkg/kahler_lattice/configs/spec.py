"""Homology-level description of a tamed almost complex structure.

A :class:`CurveConeSpec` lists the classes of irreducible curves with
negative self-intersection together with the structural hypotheses that
hold for the structure (k disjoint -1 curves, top stratum, good stratum,
del Pezzo, or one of the three sphere-bundle cases). A del Pezzo structure
is tamed in the class -K; every negative curve then pairs positively with
-K, which leaves only -1 curves, so the flag implies the top stratum.
"""

from __future__ import annotations

from enum import Enum
from math import isqrt
from typing import Any, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.enumeration.classes import exceptional_classes
from kahler_lattice.lattice.model import (
    IntClass,
    ManifoldModel,
    RayClass,
    is_exceptional,
    j_genus,
    pair,
    square,
)


class BundleCase(str, Enum):
    NO_NEGATIVE = "i"
    SECTION_A = "ii"
    SECTION_B = "iii"


class SphereBundleCase(BaseModel):
    """Which negative curve an S2xS2 structure carries: A_p = H1 + pH2 or B_p = pH1 + H2, p < 0."""

    model_config = ConfigDict(frozen=True)

    case: BundleCase
    p: int = 0

    @model_validator(mode="after")
    def _check_p(self) -> "SphereBundleCase":
        if self.case is BundleCase.NO_NEGATIVE and self.p != 0:
            raise ValueError("case i has no negative curve; p must be 0")
        if self.case is not BundleCase.NO_NEGATIVE and self.p >= 0:
            raise ValueError("cases ii and iii need p < 0")
        return self


class SpecFlags(BaseModel):
    model_config = ConfigDict(frozen=True)

    disjoint_minus_ones: Optional[int] = Field(default=None, ge=0)
    top_stratum: bool = False
    good: bool = False
    del_pezzo: bool = False
    sphere_bundle_case: Optional[SphereBundleCase] = None
    negative_section: Optional[int] = Field(default=None, le=0)


def _raw_class(model: Any, value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return {"model": model, "coeffs": list(value)}
    return value


class CurveConeSpec(BaseModel):
    """Negative curve classes plus the hypotheses the structure satisfies."""

    model_config = ConfigDict(frozen=True)

    model: ManifoldModel
    negative_classes: tuple[IntClass, ...] = ()
    flags: SpecFlags = SpecFlags()
    taming_class: Optional[RayClass] = None

    @model_validator(mode="before")
    @classmethod
    def _read_lists(cls, data: Any) -> Any:
        if isinstance(data, dict) and "model" in data:
            model = data["model"]
            data = dict(data)
            data["negative_classes"] = [_raw_class(model, v) for v in data.get("negative_classes", [])]
            if isinstance(data.get("taming_class"), (list, tuple)):
                data["taming_class"] = _raw_class(model, data["taming_class"])
        return data

    @model_validator(mode="after")
    def _complete_and_check(self) -> "CurveConeSpec":
        negatives = list(dict.fromkeys(self.negative_classes))
        flags = self.flags
        model = self.model
        if flags.sphere_bundle_case is not None and model.is_blowup:
            _violation("sphere_bundle_case applies to the s2xs2 model")
        if flags.negative_section is not None and model != ManifoldModel.blowup(1):
            _violation("negative_section applies to Blowup(1)")
        if flags.del_pezzo:
            if not model.is_blowup or model.k > 8:
                _violation(f"-K has no positive square on {model}; no del Pezzo structure")
            minus_k = -model.canonical_class()
            if self.taming_class is not None and self.taming_class.primitive()[0] != minus_k:
                _violation(f"a del Pezzo structure is tamed in the class {minus_k.label()}")
            flags = flags.model_copy(update={"top_stratum": True})
            object.__setattr__(self, "flags", flags)
        if flags.disjoint_minus_ones is not None:
            n = flags.disjoint_minus_ones
            if not model.is_blowup or n > model.k:
                _violation(f"{n} disjoint -1 curves do not fit on {model}")
            if not any(is_exceptional(c) for c in negatives):
                negatives.extend(model.E(i) for i in range(1, n + 1))
        if flags.good and model.is_blowup and model.k >= 10:
            minus_k = -model.canonical_class()
            if minus_k not in negatives:
                negatives.append(minus_k)
        for c in negatives:
            if c.model != model:
                raise KahlerError(Code.E0101, details={"spec": str(model), "class": str(c.model)})
            if square(c) >= 0:
                _violation(f"{c.label()} has square {square(c)} >= 0")
            genus = j_genus(c)
            if genus < 0:
                _violation(f"{c.label()} has negative genus {genus}")
            if flags.top_stratum and not is_exceptional(c):
                _violation(f"{c.label()} is not a -1 class; the top stratum has no other negative curves")
            if flags.good and genus == 0 and not is_exceptional(c):
                _violation(f"{c.label()} is a negative sphere other than a -1 curve")
        if flags.disjoint_minus_ones and _disjoint_count(negatives) < flags.disjoint_minus_ones:
            _violation(f"fewer than {flags.disjoint_minus_ones} pairwise disjoint -1 classes")
        extra = list(self.sphere_bundle_negatives())
        negatives.extend(c for c in extra if c not in negatives)
        if model.rank == 2 and len(negatives) > 1:
            _violation(f"{model} carries at most one negative curve, got {len(negatives)}")
        if model.rank == 2 and set(negatives) != set(extra):
            _violation(f"negative curves on {model} must match its bundle case")
        object.__setattr__(self, "negative_classes", tuple(sorted(negatives, key=lambda c: c.sort_key())))
        taming = self.taming_class if self.taming_class is not None else _derive_taming(self)
        if any(pair(taming, c) <= 0 for c in self.negative_classes) or square(taming) <= 0:
            _violation(f"{taming.label()} does not tame the listed curves")
        object.__setattr__(self, "taming_class", taming)
        return self

    @classmethod
    def generic(cls, model: ManifoldModel, degree_bound: Optional[int] = None) -> "CurveConeSpec":
        """Top stratum: the -1 classes are exactly the exceptional classes."""
        if not model.is_blowup:
            return cls(model=model, flags=SpecFlags(sphere_bundle_case=SphereBundleCase(case=BundleCase.NO_NEGATIVE)))
        table = list(exceptional_classes(model, degree_bound))
        flags = SpecFlags(top_stratum=True, disjoint_minus_ones=model.k if model.k >= 1 else None)
        return cls(model=model, negative_classes=tuple(table), flags=flags)

    @property
    def complete_negatives(self) -> bool:
        """The negative list is the whole set of negative curves."""
        if not self.model.is_blowup or self.model.k <= 1:
            return True
        return self.flags.top_stratum and self.model.k <= 8

    def sphere_bundle_negatives(self) -> tuple[IntClass, ...]:
        model = self.model
        case = self.flags.sphere_bundle_case
        if case is not None and case.case is BundleCase.SECTION_A:
            return (IntClass.of(model, (1, case.p)),)
        if case is not None and case.case is BundleCase.SECTION_B:
            return (IntClass.of(model, (case.p, 1)),)
        if model == ManifoldModel.blowup(1):
            return (_section_class(model, self.flags, self.negative_classes),)
        return ()

    def curve_cone_generators(self) -> Optional[tuple[IntClass, ...]]:
        """Exact generators of the curve cone when the model has rank <= 2."""
        model = self.model
        if not model.is_blowup:
            case = self.flags.sphere_bundle_case
            fiber = IntClass.of(model, (0, 1))
            if case is None or case.case is BundleCase.NO_NEGATIVE:
                return (IntClass.of(model, (1, 0)), fiber)
            if case.case is BundleCase.SECTION_A:
                return (fiber, IntClass.of(model, (1, case.p)))
            return (IntClass.of(model, (1, 0)), IntClass.of(model, (case.p, 1)))
        if model.k == 0:
            return (model.H(),)
        if model.k == 1:
            return (model.H() - model.E(1),) + self.sphere_bundle_negatives()
        return None


def _violation(message: str) -> None:
    raise KahlerError(Code.E0501, message=message)


def _section_class(model: ManifoldModel, flags: SpecFlags, listed: tuple[IntClass, ...]) -> IntClass:
    """The negative curve sH + (1 - s)E of Blowup(1); E unless stated otherwise."""
    if flags.negative_section is not None:
        s = flags.negative_section
        return IntClass.of(model, (s, s - 1))
    if listed:
        return listed[0]
    return model.E(1)


def _disjoint_count(classes: list[IntClass]) -> int:
    minus_ones = [c for c in classes if is_exceptional(c)]
    graph = nx.Graph()
    graph.add_nodes_from(range(len(minus_ones)))
    for i in range(len(minus_ones)):
        for j in range(i + 1, len(minus_ones)):
            if pair(minus_ones[i], minus_ones[j]) == 0:
                graph.add_edge(i, j)
    return max((len(c) for c in nx.find_cliques(graph)), default=0)


def _taming_candidates(spec: CurveConeSpec) -> list[IntClass]:
    model = spec.model
    flags = spec.flags
    if not model.is_blowup:
        case = flags.sphere_bundle_case
        if case is not None and case.case is BundleCase.SECTION_A:
            return [IntClass.of(model, (1, 1 - case.p))]
        if case is not None and case.case is BundleCase.SECTION_B:
            return [IntClass.of(model, (1 - case.p, 1))]
        return [IntClass.of(model, (1, 1))]
    k = model.k
    if flags.del_pezzo:
        return [-model.canonical_class()]
    if k == 0:
        return [model.H()]
    if k == 1:
        s = flags.negative_section if flags.negative_section is not None else 0
        return [IntClass.of(model, (2 - s, 1 - s))]
    found = []
    if flags.disjoint_minus_ones == k:
        found.append(IntClass.of(model, (2 * k,) + (1,) * k))
    if k <= 8:
        found.append(-model.canonical_class())
    start = isqrt(k) + 1
    found.extend(IntClass.of(model, (level,) + (1,) * k) for level in range(start, start + 4 * k + 8))
    return found


def _derive_taming(spec: CurveConeSpec) -> RayClass:
    for omega in _taming_candidates(spec):
        if square(omega) > 0 and all(pair(omega, c) > 0 for c in spec.negative_classes):
            return omega.to_ray()
    raise KahlerError(Code.E0501, message="No taming class found; give one explicitly")
