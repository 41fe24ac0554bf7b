"""Constructive decomposition of canonical-positive classes into positive spheres.

Blowup(0) and Blowup(1) are solved directly. For k >= 2 a class is split
along a line x + t d with d = (0; c), sum(c) = 0: such directions keep both
the H-degree and the pairing with K fixed, so the line leaves the cone
through exceptional walls. Each exit point is carried to the E_k face,
restricted to Blowup(k - 1) and decomposed there.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, islice, permutations
from typing import Iterator, Optional

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.common.logging_config import internal_logger
from kahler_lattice.cones.certificate import (
    Certificate,
    ConeKind,
    Decomposition,
    DecompositionPart,
    Verdict,
    replay_certificate,
)
from kahler_lattice.cones.face import face_restrict, transport_to_last
from kahler_lattice.cones.membership import in_PK, in_positive_cone
from kahler_lattice.enumeration.classes import exceptional_classes, exceptional_classes_sliced
from kahler_lattice.lattice.model import (
    AnyClass,
    IntClass,
    ManifoldModel,
    RayClass,
    is_spherical,
    pair,
    square,
)

# patterns for the line directions, tried in this order after the transpositions
_PATTERNS = ((1, 1, -2), (2, -1, -1), (1, 1, -1, -1), (1, 2, -3), (3, -1, -2), (1, 1, 1, -3))
_MAX_DIRECTIONS = 400
_MAX_ROUNDS = 16

Parts = list[tuple[IntClass, Fraction]]


def _as_sphere(x: RayClass) -> Optional[tuple[IntClass, Fraction]]:
    v, scale = x.primitive()
    if is_spherical(v) and square(v) > 0:
        return v, scale
    return None


def _directions(model: ManifoldModel) -> Iterator[IntClass]:
    k = model.k
    seen = set()

    def emit(c: dict[int, int]) -> Iterator[IntClass]:
        coeffs = [0] * (k + 1)
        for idx, val in c.items():
            coeffs[idx + 1] = val
        key = tuple(coeffs)
        if key not in seen:
            seen.add(key)
            yield IntClass.of(model, coeffs)

    for i, j in combinations(range(k), 2):
        yield from emit({i: 1, j: -1})
    for pattern in _PATTERNS:
        if len(pattern) > k:
            continue
        for idx in permutations(range(k), len(pattern)):
            yield from emit(dict(zip(idx, pattern)))


@lru_cache(maxsize=64)
def _walls(model: ManifoldModel, degree: Optional[int], workers: int) -> tuple[IntClass, ...]:
    if degree is None:
        return tuple(exceptional_classes(model))
    return tuple(exceptional_classes_sliced(model, degree, workers))


def _earliest(x: RayClass, d: IntClass, walls: tuple[IntClass, ...]) -> Optional[tuple[Fraction, list[IntClass]]]:
    best: Optional[Fraction] = None
    active: list[IntClass] = []
    for wall in walls:
        slope = pair(wall, d)
        if slope >= 0:
            continue
        t = Fraction(pair(wall, x)) / -slope
        if best is None or t < best:
            best, active = t, [wall]
        elif t == best:
            active.append(wall)
    return None if best is None else (best, active)


def _segment_degree(x: RayClass, y: RayClass) -> int:
    limit = Fraction(x.coeffs[0]) ** 2 / min(Fraction(square(x)), Fraction(square(y)))
    d = 0
    while (d + 1) ** 2 < limit:
        d += 1
    return d


def _first_wall(
    x: RayClass,
    d: IntClass,
    degree_bound: Optional[int],
    workers: int,
) -> Optional[tuple[Fraction, IntClass]]:
    """First wall met by x + t d for t >= 0; on a tie the one with the smallest coefficients."""
    model = x.model
    complete = model.k <= 8
    degree: Optional[int] = None if complete else 1
    for _ in range(_MAX_ROUNDS):
        hit = _earliest(x, d, _walls(model, degree, workers))
        if hit is None:
            return None
        t, active = hit
        y = x + d * t
        if square(y) <= 0:
            return None
        wall = min(active, key=lambda w: w.sort_key())
        if complete:
            return t, wall
        needed = _segment_degree(x, y)
        if needed <= degree:
            return t, wall
        if degree_bound is not None and needed > degree_bound:
            raise KahlerError(Code.E0302, message=f"Walls up to degree {needed} cross the line",
                              details={"required": needed, "bound": degree_bound})
        degree = needed
    return None


def _rank_two(x: RayClass) -> Parts:
    """Blowup(1): x = pH - qE with 0 < q < p is a positive mix of H and sH - (s-1)E."""
    model = x.model
    p, q = x.coeffs
    if not 0 < q < p:
        raise KahlerError(Code.X0403, message=f"{x.label()} is not interior on Blowup(1)")
    s = int(p // (p - q)) + 1
    beta = q / (s - 1)
    alpha = p - beta * s
    return [(model.H(), alpha), (IntClass.of(model, (s, s - 1)), beta)]


def _split(x: RayClass, degree_bound: Optional[int], workers: int) -> Parts:
    single = _as_sphere(x)
    if single is not None:
        return [single]
    model = x.model
    if model.k == 0:
        return [(model.H(), x.coeffs[0])]
    if model.k == 1:
        return _rank_two(x)
    for d in islice(_directions(model), _MAX_DIRECTIONS):
        ahead = _first_wall(x, d, degree_bound, workers)
        if ahead is None:
            continue
        if ahead[0] == 0:
            # x already lies on this wall
            return _through_face(x, ahead[1], degree_bound, workers)
        behind = _first_wall(x, -d, degree_bound, workers)
        if behind is None:
            continue
        if behind[0] == 0:
            return _through_face(x, behind[1], degree_bound, workers)
        (t_plus, wall_plus), (t_minus, wall_minus) = ahead, behind
        total = t_plus + t_minus
        ends = ((x + d * t_plus, wall_plus, t_minus / total), (x - d * t_minus, wall_minus, t_plus / total))
        internal_logger.debug(f"{x.label()}: line {d.label()} meets {wall_plus.label()} and {wall_minus.label()}")
        parts: Parts = []
        for point, wall, weight in ends:
            parts.extend((c, w * weight) for c, w in _through_face(point, wall, degree_bound, workers))
        return parts
    raise KahlerError(Code.E0302, message=f"No splitting line found for {x.label()}",
                      details={"directions": _MAX_DIRECTIONS})


def _through_face(y: RayClass, wall: IntClass, degree_bound: Optional[int], workers: int) -> Parts:
    transport = transport_to_last(wall)
    restricted = face_restrict(transport.forward(y))
    model = y.model
    parts = []
    for c, w in _split(restricted, degree_bound, workers):
        lifted = IntClass.of(model, (*c.coeffs, 0))
        parts.append((transport.backward(lifted), w))
    return parts


def _merge(parts: Parts) -> tuple[DecompositionPart, ...]:
    weights: dict[IntClass, Fraction] = {}
    for c, w in parts:
        weights[c] = weights.get(c, Fraction(0)) + Fraction(w)
    ordered = sorted(weights, key=lambda c: c.sort_key())
    return tuple(DecompositionPart(part=c, weight=weights[c]) for c in ordered)


def _finish(q: RayClass, parts: Parts) -> Certificate:
    cert = Certificate(cone=ConeKind.SK_PLUS, query=q, verdict=Verdict.IN,
                       evidence=Decomposition(parts=_merge(parts)))
    if not replay_certificate(cert):
        raise KahlerError(Code.X0403, message=f"Decomposition of {q.label()} does not replay")
    return cert


def decompose_SP(  # pylint: disable=invalid-name
    e: AnyClass,
    degree_bound: Optional[int] = None,
    workers: int = 1,
) -> Certificate:
    """Write a canonical-positive class as a positive sum of positive spheres.

    Classes outside the open cone get the membership certificate back,
    relabelled; a class on a wall is refused with that Boundary evidence.
    """
    q = RayClass.coerce(e)
    if not q.model.is_blowup:
        raise KahlerError(Code.E0101, message="decompose works on blow-up models; use in_SK_plus")
    pk = in_PK(q, degree_bound=degree_bound, workers=workers)
    if pk.verdict is not Verdict.IN:
        return pk.relabel(ConeKind.SK_PLUS)
    return _finish(q, _split(q, degree_bound, workers))


def _sphere_bundle_split(q: RayClass) -> Parts:
    """xH1 + yH2 with x, y > 0 over (1, l) and (l, 1)."""
    model = q.model
    x, y = q.coeffs
    if x == y:
        return [(IntClass.of(model, (1, 1)), x)]
    ratio = max(x / y, y / x)
    level = int(ratio) + 1
    beta = (level * x - y) / (level * level - 1)
    alpha = (level * y - x) / (level * level - 1)
    return [(IntClass.of(model, (1, level)), alpha), (IntClass.of(model, (level, 1)), beta)]


def in_SK_plus(  # pylint: disable=invalid-name
    e: AnyClass,
    degree_bound: Optional[int] = None,
    workers: int = 1,
) -> Certificate:
    """Membership in the open cone spanned by positive spheres, with the decomposition as proof."""
    q = RayClass.coerce(e)
    if q.model.is_blowup:
        return decompose_SP(q, degree_bound=degree_bound, workers=workers)
    positive = in_positive_cone(q)
    if positive.verdict is not Verdict.IN:
        return positive.relabel(ConeKind.SK_PLUS)
    return _finish(q, _sphere_bundle_split(q))
