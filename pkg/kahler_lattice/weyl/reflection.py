"""Reflections in (-2)-roots of Blowup(k) and reduction to a normal form.

Roots used as generators are the transpositions ``E_i - E_j`` and the
Cremona roots ``H - E_i - E_j - E_l``. The reflection in ``r`` is
``e -> e + (e.r) r``; it is an isometry fixing K.

Reduction: while the Cremona root on the three largest signed ``b_i``
(lowest index first on ties) pairs negatively with ``e`` and the step
lowers ``|a|``, reflect in it. Then sort ``b`` by adjacent transpositions
into descending ``|b_i|``, positive before negative at equal magnitude.
"""

from __future__ import annotations

from collections import deque
from typing import Any, Iterable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, model_serializer, model_validator

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.common.logging_config import internal_logger
from kahler_lattice.lattice.model import (
    AnyClass,
    IntClass,
    ManifoldModel,
    RayClass,
    canonical_pairing,
    square,
)


def _canonical_key(value: int) -> tuple[int, int]:
    return (-abs(value), -value)


class Root(BaseModel):
    """A generator of the reflection group."""

    model_config = ConfigDict(frozen=True)

    vector: IntClass

    @model_validator(mode="after")
    def _check_root(self) -> "Root":
        v = self.vector
        if not v.model.is_blowup:
            raise KahlerError(Code.E0201, message="Roots live on blow-up models")
        if square(v) != -2 or canonical_pairing(v) != 0:
            raise KahlerError(Code.E0201, details={"coeffs": list(v.coeffs), "reason": "need r.r = -2, K.r = 0"})
        if _root_indices(v.coeffs) is None:
            raise KahlerError(Code.E0201, details={"coeffs": list(v.coeffs),
                                                  "reason": "not of the form E_i-E_j or H-E_i-E_j-E_l"})
        return self

    @model_serializer
    def _serialize(self) -> dict[str, Any]:
        return {"root": self.label(), "coeffs": list(self.vector.coeffs)}

    @classmethod
    def transposition(cls, model: ManifoldModel, i: int, j: int) -> "Root":
        """E_i - E_j, 1-based."""
        coeffs = [0] * model.rank
        coeffs[i] = -1
        coeffs[j] = 1
        return cls(vector=IntClass.of(model, coeffs))

    @classmethod
    def cremona(cls, model: ManifoldModel, i: int, j: int, m: int) -> "Root":
        """H - E_i - E_j - E_m, 1-based."""
        coeffs = [0] * model.rank
        coeffs[0] = 1
        for idx in (i, j, m):
            coeffs[idx] = 1
        return cls(vector=IntClass.of(model, coeffs))

    @property
    def model(self) -> ManifoldModel:
        return self.vector.model

    @property
    def is_cremona(self) -> bool:
        return self.vector.coeffs[0] != 0

    def label(self) -> str:
        return self.vector.label()


def _root_indices(coeffs: Sequence[int]) -> Optional[tuple[int, ...]]:
    a, b = coeffs[0], coeffs[1:]
    nonzero = [i + 1 for i, x in enumerate(b) if x]
    if a == 0 and len(nonzero) == 2 and sorted(b[i - 1] for i in nonzero) == [-1, 1]:
        return tuple(nonzero)
    if a == 1 and len(nonzero) == 3 and all(b[i - 1] == 1 for i in nonzero):
        return tuple(nonzero)
    return None


def simple_roots(model: ManifoldModel) -> list[Root]:
    """E_i - E_{i+1} for 1 <= i < k, plus H - E_1 - E_2 - E_3 when k >= 3."""
    if not model.is_blowup:
        raise KahlerError(Code.E0101, message="Simple roots exist only on blow-up models")
    roots = [Root.transposition(model, i, i + 1) for i in range(1, model.k)]
    if model.k >= 3:
        roots.append(Root.cremona(model, 1, 2, 3))
    return roots


def _reflect_coeffs(model: ManifoldModel, v: Sequence, r: Sequence[int]) -> tuple:
    t = model.dot(v, r)
    return tuple(x + t * y for x, y in zip(v, r))


def reflect(e: AnyClass, r: Root) -> AnyClass:
    """e + (e.r) r"""
    if e.model != r.model:
        raise KahlerError(Code.E0101, details={"class": str(e.model), "root": str(r.model)})
    coeffs = _reflect_coeffs(e.model, e.coeffs, r.vector.coeffs)
    return RayClass.of(e.model, coeffs) if isinstance(e, RayClass) else IntClass.of(e.model, coeffs)


def reduction_measure(coeffs: Sequence[int]) -> tuple[int, int]:
    """(|a|, number of inversions of the canonical b order)."""
    keys = [_canonical_key(x) for x in coeffs[1:]]
    inversions = sum(1 for i in range(len(keys)) for j in range(i + 1, len(keys)) if keys[i] > keys[j])
    return abs(coeffs[0]), inversions


class ReductionWord(BaseModel):
    """Roots applied in order, taking ``start`` to ``end``."""

    model_config = ConfigDict(frozen=True)

    start: IntClass
    end: IntClass
    roots: tuple[Root, ...] = ()

    def __len__(self) -> int:
        return len(self.roots)

    def apply(self, e: AnyClass) -> AnyClass:
        for r in self.roots:
            e = reflect(e, r)
        return e

    def apply_inverse(self, e: AnyClass) -> AnyClass:
        for r in reversed(self.roots):
            e = reflect(e, r)
        return e

    def replay(self) -> bool:
        """Re-run the word, checking every step lowers the reduction measure."""
        current = self.start
        measure = reduction_measure(current.coeffs)
        for r in self.roots:
            current = reflect(current, r)
            nxt = reduction_measure(current.coeffs)
            if nxt >= measure:
                return False
            measure = nxt
        return current == self.end


def _reduce_coeffs(model: ManifoldModel, coeffs: Sequence[int]) -> tuple[tuple[int, ...], list[tuple[str, tuple[int, ...]]]]:
    k = model.k
    a, b = coeffs[0], list(coeffs[1:])
    steps: list[tuple[str, tuple[int, ...]]] = []
    while k >= 3:
        top = sorted(range(k), key=lambda i: (-b[i], i))[:3]
        d = a - sum(b[i] for i in top)
        if d >= 0 or abs(a + d) >= abs(a):
            break
        a += d
        for i in top:
            b[i] += d
        steps.append(("cremona", tuple(sorted(i + 1 for i in top))))
    # adjacent transpositions into canonical order
    for end in range(k - 1, 0, -1):
        for i in range(end):
            if _canonical_key(b[i]) > _canonical_key(b[i + 1]):
                b[i], b[i + 1] = b[i + 1], b[i]
                steps.append(("swap", (i + 1, i + 2)))
    return (a, *b), steps


def cremona_reduce(e: IntClass) -> tuple[IntClass, ReductionWord]:
    """Normal form of ``e`` with the word that reaches it.

    For k < 3 only transpositions are available.
    """
    if not e.model.is_blowup:
        raise KahlerError(Code.E0101, message="Cremona reduction needs a blow-up model")
    model = e.model
    normal, steps = _reduce_coeffs(model, e.coeffs)
    roots = tuple(Root.cremona(model, *idx) if kind == "cremona" else Root.transposition(model, *idx)
                  for kind, idx in steps)
    end = IntClass.of(model, normal)
    word = ReductionWord(start=e, end=end, roots=roots)
    internal_logger.debug(f"Reduced {e.label()} to {end.label()} in {len(roots)} steps")
    return end, word


def normal_form(e: IntClass) -> IntClass:
    return cremona_reduce(e)[0]


class Equivalence(BaseModel):
    model_config = ConfigDict(frozen=True)

    equivalent: bool
    normal_forms: tuple[IntClass, IntClass]
    words: tuple[ReductionWord, ReductionWord]

    def connecting_roots(self) -> tuple[Root, ...]:
        """Roots taking the first class to the second, when equivalent."""
        first, second = self.words
        return first.roots + tuple(reversed(second.roots))

    def replay(self) -> bool:
        """Check that the connecting roots carry the first class onto the second."""
        first, second = self.words
        current = first.start
        for r in self.connecting_roots():
            current = reflect(current, r)
        return current == second.start


def is_equivalent(e1: IntClass, e2: IntClass) -> Equivalence:
    if e1.model != e2.model:
        raise KahlerError(Code.E0101, details={"left": str(e1.model), "right": str(e2.model)})
    n1, w1 = cremona_reduce(e1)
    n2, w2 = cremona_reduce(e2)
    return Equivalence(equivalent=n1 == n2, normal_forms=(n1, n2), words=(w1, w2))


def weyl_orbit(e: IntClass, roots: Optional[Iterable[Root]] = None, limit: int = 100_000) -> set[IntClass]:
    """Breadth-first orbit under the group generated by ``roots``."""
    gens = [r.vector.coeffs for r in (roots if roots is not None else simple_roots(e.model))]
    model = e.model
    seen = {tuple(e.coeffs)}
    queue = deque([tuple(e.coeffs)])
    while queue:
        v = queue.popleft()
        for r in gens:
            w = _reflect_coeffs(model, v, r)
            if w not in seen:
                if len(seen) >= limit:
                    raise KahlerError(Code.E0302, message=f"Orbit of {e.label()} exceeds {limit} classes")
                seen.add(w)
                queue.append(w)
    return {IntClass.of(model, v) for v in seen}
