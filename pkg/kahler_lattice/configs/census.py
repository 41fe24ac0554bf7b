"""Census of reducible configurations of a spherical class.

A configuration is a multiset of genus-zero classes with multiplicities
summing to the total. Candidates are bounded by the taming class: every
part has 0 < w.c <= w.e. The search is a depth-first walk over candidate
multiplicities; the first candidate fixes a subtree and subtrees run
through :func:`parallel_map`.
"""

from __future__ import annotations

from enum import Enum
from itertools import product
from typing import Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy.utilities.iterables import partitions

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.common.logging_config import internal_logger
from kahler_lattice.common.parallel import parallel_map
from kahler_lattice.configs.nef import NefVerdict, is_nef
from kahler_lattice.configs.spec import CurveConeSpec
from kahler_lattice.enumeration.classes import spherical_classes
from kahler_lattice.enumeration.tables import SquareFilter
from kahler_lattice.lattice.model import IntClass, j_genus, l_value, pair, square


class Part(BaseModel):
    model_config = ConfigDict(frozen=True)

    curve: IntClass
    multiplicity: int = Field(ge=1)


class Configuration(BaseModel):
    """Parts, their total and the intersection graph (edge where the pairing is positive)."""

    model_config = ConfigDict(frozen=True)

    total: IntClass
    parts: tuple[Part, ...]
    edges: tuple[tuple[int, int, int], ...] = ()

    @model_validator(mode="after")
    def _check(self) -> "Configuration":
        summed = self.total.model.zero()
        for p in self.parts:
            summed = summed + p.curve * p.multiplicity
            if j_genus(p.curve) != 0:
                raise KahlerError(Code.E0301, message=f"Part {p.curve.label()} is not spherical")
        if summed != self.total:
            raise KahlerError(Code.E0301, message=f"Parts sum to {summed.label()}, not {self.total.label()}")
        if self.edges != _edges(self.parts):
            raise KahlerError(Code.E0301, message="Recorded intersection graph does not match the pairings")
        return self

    @classmethod
    def build(cls, total: IntClass, parts: list[tuple[IntClass, int]]) -> "Configuration":
        ordered = tuple(Part(curve=c, multiplicity=m) for c, m in sorted(parts, key=_part_key))
        return cls(total=total, parts=ordered, edges=_edges(ordered))

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        for i, p in enumerate(self.parts):
            g.add_node(i, label=p.curve.label(), multiplicity=p.multiplicity)
        for i, j, w in self.edges:
            g.add_edge(i, j, weight=w)
        return g

    def is_connected(self) -> bool:
        return nx.is_connected(self.graph())

    @property
    def size(self) -> int:
        return sum(p.multiplicity for p in self.parts)

    def labels(self) -> list[str]:
        return [f"{p.multiplicity}*({p.curve.label()})" if p.multiplicity > 1 else p.curve.label() for p in self.parts]


def _part_key(item: tuple[IntClass, int]) -> tuple:
    c, m = item
    return (tuple(-x for x in c.coeffs), -m)


def _edges(parts: tuple[Part, ...]) -> tuple[tuple[int, int, int], ...]:
    found = []
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            w = pair(parts[i].curve, parts[j].curve)
            if w > 0:
                found.append((i, j, w))
    return tuple(found)


class CensusResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    total: IntClass
    max_parts: int
    max_degree: int
    candidates: tuple[IntClass, ...]
    configurations: tuple[Configuration, ...]
    truncated: bool


def _candidates(e: IntClass, spec: CurveConeSpec, max_degree: int, workers: int) -> list[IntClass]:
    omega = spec.taming_class
    budget = pair(omega, e)
    nef = is_nef(e, spec).verdict is NefVerdict.NEF
    negatives = set(spec.negative_classes)
    found = []
    for c in spherical_classes(e.model, max_degree, SquareFilter.ANY, workers):
        weight = pair(omega, c)
        if not 0 < weight <= budget:
            continue
        if square(c) < 0 and c not in negatives:
            continue
        if any(pair(c, n) < 0 for n in negatives if n != c):
            continue
        if nef and pair(e, c) < 0:
            continue
        found.append(c)
    return found


class _Search:
    def __init__(self, e: IntClass, candidates: list[IntClass], max_parts: int, omega) -> None:
        self.e = e
        self.candidates = candidates
        self.max_parts = max_parts
        self.weights = [pair(omega, c) for c in candidates]
        self.omega = omega
        # candidates are sorted by descending H-degree
        self.by_degree = e.model.is_blowup
        self.lowest_degree = min((c.coeffs[0] for c in candidates), default=0)

    def subtree(self, first: int) -> list[tuple[list[tuple[IntClass, int]], bool]]:
        """Configurations whose first used candidate is ``first``."""
        out: list[tuple[list[tuple[IntClass, int]], bool]] = []
        self._walk(first, self.e, [], 0, out, forced=True)
        return out

    def _could_complete(self, index: int, rest: IntClass) -> bool:
        """Whether a branch cut by ``max_parts`` could still have summed to ``e``."""
        if rest == rest.model.zero():
            return True
        return pair(self.omega, rest) > 0 and index + 1 < len(self.candidates)

    def _walk(self, index, remaining, chosen, used, out, forced=False) -> None:
        if remaining == remaining.model.zero():
            if chosen:
                out.append((list(chosen), False))
            return
        if index >= len(self.candidates):
            return
        left = pair(self.omega, remaining)
        if left <= 0:
            return
        c = self.candidates[index]
        if self.by_degree:
            degree_left = remaining.coeffs[0]
            if degree_left > 0 and c.coeffs[0] <= 0:
                return
            if degree_left < 0 and self.lowest_degree >= 0:
                return
        compatible = all(pair(c, d) >= 0 for d, _ in chosen)
        weight = self.weights[index]
        top = int(left / weight) if compatible else 0
        lowest = 1 if forced else 0
        for m in range(top, lowest - 1, -1):
            if m and used + m > self.max_parts:
                if self._could_complete(index, remaining - c * m):
                    out.append(([], True))
                continue
            if m:
                chosen.append((c, m))
                self._walk(index + 1, remaining - c * m, chosen, used + m, out)
                chosen.pop()
            else:
                self._walk(index + 1, remaining, chosen, used, out)


def _readings(parts: list[tuple[IntClass, int]]) -> list[list[tuple[IntClass, int]]]:
    """Split multiplicities of square >= 0 classes into distinct curves of the same class."""
    options = []
    for c, m in parts:
        if square(c) < 0 or m == 1:
            options.append([[(c, m)]])
            continue
        splits = []
        for partition in partitions(m):
            split = []
            for size, count in sorted(partition.items(), reverse=True):
                split.extend([(c, size)] * count)
            splits.append(split)
        options.append(splits)
    return [[p for group in combo for p in group] for combo in product(*options)]


def enumerate_configurations(
    e: IntClass,
    spec: Optional[CurveConeSpec] = None,
    max_parts: int = 6,
    max_degree: int = 8,
    workers: int = 1,
) -> CensusResult:
    """Every reducible configuration of ``e`` with at most ``max_parts`` curves.

    ``truncated`` is set when some branch was cut by ``max_parts``, so an
    empty result with ``truncated=False`` means none exist at this degree.
    """
    if j_genus(e) != 0:
        raise KahlerError(Code.E0301, message=f"{e.label()} is not spherical", details={"genus": j_genus(e)})
    if max_parts < 1 or max_degree < 1:
        raise KahlerError(Code.E0301, message="max_parts and max_degree must be positive")
    spec = spec or CurveConeSpec.generic(e.model, max_degree)
    candidates = sorted(_candidates(e, spec, max_degree, workers), key=lambda c: _part_key((c, 1)))
    search = _Search(e, candidates, max_parts, spec.taming_class)
    results = parallel_map(search.subtree, range(len(candidates)), workers)
    truncated = any(cut for _, cut in results)
    seen, configs = set(), []
    for parts, cut in results:
        if cut:
            continue
        for reading in _readings(parts):
            if len(reading) == 1 and reading[0][1] == 1:
                continue
            config = Configuration.build(e, reading)
            key = tuple((p.curve.coeffs, p.multiplicity) for p in config.parts)
            if key not in seen:
                seen.add(key)
                configs.append(config)
    configs.sort(key=lambda c: (len(c.parts), c.size, [(_part_key((p.curve, p.multiplicity))) for p in c.parts]))
    internal_logger.debug(f"{len(configs)} configurations of {e.label()} from {len(candidates)} candidates")
    return CensusResult(total=e, max_parts=max_parts, max_degree=max_degree, candidates=tuple(candidates),
                        configurations=tuple(configs), truncated=truncated)


class ThreeTermCheck(BaseModel):
    part: int
    value: int
    holds: bool


class DimensionReport(BaseModel):
    """Moduli dimension bookkeeping for one configuration."""

    skipped: bool = False
    reason: Optional[str] = None
    bound: int = 0
    weighted: int = 0
    unweighted: int = 0
    holds: bool = True
    equality: bool = False
    three_term: tuple[ThreeTermCheck, ...] = ()


def check_dimension_bounds(c: Configuration) -> DimensionReport:
    """sum(m_i l(e_i)) <= l(e) - 1 and the sharper bound through a negative part."""
    if not c.is_connected():
        return DimensionReport(skipped=True, reason="configuration is not connected")
    bound = l_value(c.total) - 1
    dims = [l_value(p.curve) for p in c.parts]
    weighted = sum(p.multiplicity * d for p, d in zip(c.parts, dims))
    unweighted = sum(dims)
    checks = []
    for j, p in enumerate(c.parts):
        meet = pair(p.curve, c.total)
        if square(p.curve) < 0 < meet:
            value = weighted - p.multiplicity * dims[j] + p.multiplicity * meet
            checks.append(ThreeTermCheck(part=j, value=value, holds=value <= bound))
    holds = weighted <= bound and all(t.holds for t in checks)
    return DimensionReport(bound=bound, weighted=weighted, unweighted=unweighted, holds=holds,
                           equality=weighted == bound, three_term=tuple(checks))


class Shape(str, Enum):
    TWO_PIECE_TRANSVERSE = "TwoPieceTransverse"
    COMB = "Comb"
    TREE = "Tree"
    OTHER = "Other"


def _is_comb(c: Configuration) -> bool:
    if any(p.multiplicity != 1 for p in c.parts):
        return False
    negative = [p.curve for p in c.parts if square(p.curve) < 0]
    rest = [p.curve for p in c.parts if square(p.curve) >= 0]
    n = len(c.parts)
    if len(negative) != 1 or len(rest) < 2:
        return False
    spine = negative[0]
    return (square(spine) == 1 - n and len(set(rest)) == 1 and square(rest[0]) == 0
            and pair(spine, rest[0]) == 1)


def classify_shape(c: Configuration) -> Shape:
    if not c.is_connected():
        raise KahlerError(Code.E0301, message="Shapes are classified for connected configurations only")
    parts = c.parts
    if (len(parts) == 2 and all(p.multiplicity == 1 for p in parts)
            and pair(parts[0].curve, parts[1].curve) == 1 and all(square(p.curve) >= 0 for p in parts)):
        return Shape.TWO_PIECE_TRANSVERSE
    if _is_comb(c):
        return Shape.COMB
    if all(w == 1 for _, _, w in c.edges) and nx.is_tree(c.graph()):
        return Shape.TREE
    return Shape.OTHER
