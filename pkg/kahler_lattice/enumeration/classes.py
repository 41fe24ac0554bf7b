"""Enumeration of exceptional and spherical classes.

Two independent searches produce exceptional classes:

* ``lattice`` (k <= 8): K^perp is negative definite, so every solution is
  E_k plus a root-lattice vector r with Q(r + p) = 1 + 1/(9 - k), where p is
  the K^perp part of E_k and Q = -pairing. ``short_vectors`` with a centre
  lists them all, which makes the table complete.
* ``sliced``: for each H-degree a, solve sum(b) = 3a - 1 and
  sum(b^2) = a^2 + 1 over non-increasing b, then permute.

For k >= 10 the lattice equations have solutions outside the Cremona orbit
of E_1; those are dropped.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional

from sympy.utilities.iterables import multiset_permutations

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.common.logging_config import internal_logger
from kahler_lattice.common.parallel import parallel_map
from kahler_lattice.enumeration.short_vectors import short_vectors
from kahler_lattice.enumeration.tables import (
    ClassTable,
    ClassTag,
    SquareFilter,
    build_table,
)
from kahler_lattice.lattice.model import IntClass, ManifoldModel, pair, square
from kahler_lattice.weyl.reflection import normal_form

# H-degree of the exceptional classes of Blowup(k) is at most this for k <= 8.
COMPLETE_EXCEPTIONAL_DEGREE = {0: 0, 1: 0, 2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 3, 8: 6}


def _require_blowup(model: ManifoldModel) -> None:
    if not model.is_blowup:
        raise KahlerError(Code.E0101, message=f"Exceptional classes need a blow-up model, got {model}")


def _partitions(length: int, total: int, squares: int, cap: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Non-increasing integer tuples with given sum and sum of squares."""
    if length == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    if squares < 0 or total * total > length * squares or (total - squares) % 2:
        return
    if length == 1:
        if total * total == squares and (cap is None or total <= cap):
            yield (total,)
        return
    top = isqrt(squares)
    if cap is not None:
        top = min(top, cap)
    # the largest entry is at least the mean
    low = -isqrt(squares)
    for first in range(top, low - 1, -1):
        if first * length < total:
            break
        yield from ((first, *rest) for rest in _partitions(length - 1, total - first, squares - first * first, first))


def _permutations(values: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    for perm in multiset_permutations(list(values)):
        yield tuple(perm)


def _sliced_degree(model: ManifoldModel, a: int) -> list[IntClass]:
    k = model.k
    found = []
    for values in _partitions(k, 3 * a - 1, a * a + 1):
        found.extend(IntClass.of(model, (a, *perm)) for perm in _permutations(values))
    return found


def _in_exceptional_orbit(e: IntClass) -> bool:
    nf = normal_form(e)
    return nf.coeffs[0] == 0 and sorted(nf.coeffs[1:]) == [-1] + [0] * (e.model.k - 1)


def exceptional_classes_sliced(model: ManifoldModel, degree_bound: int, workers: int = 1) -> list[IntClass]:
    """Degree-by-degree search; independent of the lattice search."""
    _require_blowup(model)
    found = parallel_map(lambda a: _sliced_degree(model, a), range(0, degree_bound + 1), workers)
    if model.k >= 10:
        found = [e for e in found if _in_exceptional_orbit(e)]
    return sorted(set(found), key=lambda e: e.sort_key())


def _root_lattice_basis(k: int) -> list[tuple[int, ...]]:
    """Z-basis of K^perp = {(a; b) : sum(b) = 3a}: (0; e_i - e_{i+1}) and (1; 3, 0, ...)."""
    basis = []
    for i in range(k - 1):
        b = [0] * k
        b[i], b[i + 1] = 1, -1
        basis.append((0, *b))
    basis.append((1, 3) + (0,) * (k - 1))
    return basis


def _coords_in_root_basis(k: int, vec: tuple[Fraction, ...]) -> list[Fraction]:
    a, b = vec[0], list(vec[1:])
    b[0] -= 3 * a
    partial, coords = Fraction(0), []
    for i in range(k - 1):
        partial += b[i]
        coords.append(partial)
    coords.append(a)
    return coords


def exceptional_classes_lattice(model: ManifoldModel) -> list[IntClass]:
    """Complete exceptional list for 1 <= k <= 8 through K^perp."""
    _require_blowup(model)
    k = model.k
    if k == 0:
        return []
    if k > 8:
        raise KahlerError(Code.E0301, message="K^perp is negative definite only for k <= 8")
    basis = _root_lattice_basis(k)
    gram = [[model.dot(u, v) for v in basis] for u in basis]
    ek = tuple(Fraction(0) if i != k else Fraction(-1) for i in range(k + 1))
    kc = model.canonical_coeffs
    p = tuple(x + Fraction(y, 9 - k) for x, y in zip(ek, kc))
    center = [-c for c in _coords_in_root_basis(k, p)]
    bound = 1 + Fraction(1, 9 - k)
    found = []
    for y in short_vectors(gram, bound, center=center):
        coeffs = list(int(x) for x in ek)
        for yi, vec in zip(y, basis):
            if yi:
                coeffs = [c + yi * v for c, v in zip(coeffs, vec)]
        e = IntClass.of(model, coeffs)
        if square(e) == -1:
            found.append(e)
    return sorted(found, key=lambda e: e.sort_key())


def exceptional_classes(model: ManifoldModel, degree_bound: Optional[int] = None, workers: int = 1) -> ClassTable:
    """Exceptional classes with H-degree in [0, degree_bound].

    For k <= 8 the list is complete and the bound is derived; otherwise a
    bound is required and the table is flagged as bounded.
    """
    _require_blowup(model)
    if model.k <= 8:
        classes = exceptional_classes_lattice(model)
        derived = COMPLETE_EXCEPTIONAL_DEGREE[model.k]
        internal_logger.debug(f"Complete exceptional table for {model}: {len(classes)} classes")
        return build_table(model, ClassTag.EXCEPTIONAL, derived, classes, complete=True)
    if degree_bound is None or degree_bound < 1:
        raise KahlerError(Code.E0301, message=f"{model} has infinitely many exceptional classes; give a degree bound")
    classes = exceptional_classes_sliced(model, degree_bound, workers)
    return build_table(model, ClassTag.EXCEPTIONAL, degree_bound, classes, complete=False)


def _spherical_b(k: int, a: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing b of length k with sum b_i (b_i - 1) = (a - 1)(a - 2)."""
    target = (a - 1) * (a - 2)

    def walk(length: int, budget: int, cap: Optional[int]) -> Iterator[tuple[int, ...]]:
        if length == 0:
            if budget == 0:
                yield ()
            return
        # b (b - 1) <= budget  <=>  (2b - 1)^2 <= 4 budget + 1
        reach = (isqrt(4 * budget + 1) + 1) // 2
        top = reach if cap is None else min(reach, cap)
        for first in range(top, -reach, -1):
            cost = first * (first - 1)
            if cost > budget:
                continue
            yield from ((first, *rest) for rest in walk(length - 1, budget - cost, first))

    yield from walk(k, target, None)


def _spherical_degree(model: ManifoldModel, a: int, square_filter: SquareFilter) -> list[IntClass]:
    found = []
    for values in _spherical_b(model.k, a):
        sq = a * a - sum(v * v for v in values)
        if not square_filter.accepts(sq):
            continue
        found.extend(IntClass.of(model, (a, *perm)) for perm in _permutations(values))
    return found


def is_k_effective(e: IntClass, exceptional: Optional[ClassTable] = None) -> bool:
    """Pairs non-negatively with every exceptional class and lies in the forward cone.

    For k >= 3 this is read off the Cremona normal form (a > 0, all b_i >= 0);
    for k <= 2 it is checked against the complete exceptional table.
    """
    model = e.model
    if not model.is_blowup:
        return all(x >= 0 for x in e.coeffs) and any(e.coeffs)
    if model.k >= 3:
        nf = normal_form(e)
        return nf.coeffs[0] > 0 and all(x >= 0 for x in nf.coeffs[1:])
    table = exceptional or exceptional_classes(model)
    return e.coeffs[0] > 0 and all(pair(e, x) >= 0 for x in table)


def _sphere_bundle_spherical(model: ManifoldModel, degree_bound: int, square_filter: SquareFilter) -> list[IntClass]:
    found = set()
    for t in range(-degree_bound, degree_bound + 1):
        for coeffs in ((1, t), (t, 1)):
            sq = 2 * coeffs[0] * coeffs[1]
            if not square_filter.accepts(sq):
                continue
            if sq >= 0 and min(coeffs) < 0:
                continue
            found.add(IntClass.of(model, coeffs))
    return list(found)


def spherical_classes(
    model: ManifoldModel,
    degree_bound: int,
    square_filter: SquareFilter = SquareFilter.ANY,
    workers: int = 1,
) -> ClassTable:
    """Genus-zero classes of bounded degree meeting ``square_filter``.

    Classes of square >= 0 must also be K-effective; square -1 gives the
    exceptional classes up to the bound.
    """
    if degree_bound < 1:
        raise KahlerError(Code.E0301, message="degree_bound must be at least 1")
    square_filter = SquareFilter(square_filter)
    if not model.is_blowup:
        classes = _sphere_bundle_spherical(model, degree_bound, square_filter)
        return build_table(model, ClassTag.SPHERICAL, degree_bound, classes, square_filter=square_filter)
    if square_filter is SquareFilter.MINUS_ONE:
        table = exceptional_classes(model, degree_bound, workers)
        classes = [e for e in table if e.coeffs[0] <= degree_bound]
        return build_table(model, ClassTag.SPHERICAL, degree_bound, classes, square_filter=square_filter)

    exceptional = exceptional_classes(model) if model.k <= 2 else None
    # K-effective classes have a > 0
    lowest = 1 if square_filter in (SquareFilter.POS, SquareFilter.ZERO, SquareFilter.NONNEG) else -degree_bound
    found = parallel_map(lambda a: _spherical_degree(model, a, square_filter),
                         range(lowest, degree_bound + 1), workers)
    kept = []
    for e in found:
        sq = square(e)
        if sq >= 0 and not is_k_effective(e, exceptional):
            continue
        if sq == -1 and not _is_bounded_exceptional(e):
            continue
        kept.append(e)
    internal_logger.debug(f"{len(kept)} spherical classes on {model} up to degree {degree_bound}")
    return build_table(model, ClassTag.SPHERICAL, degree_bound, kept, square_filter=square_filter)


def _is_bounded_exceptional(e: IntClass) -> bool:
    if e.coeffs[0] < 0:
        return False
    return e.model.k < 10 or _in_exceptional_orbit(e)
