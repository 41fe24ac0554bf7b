"""Dual cones under the intersection pairing.

``dual_cone_rays`` computes the extreme rays of {x : x.g >= 0 for all g} by
double description: every extreme ray is orthogonal to rank - 1
independent generators. ``dual_curve_cone`` then intersects with the
closed forward positive cone, which is exact whenever the dual rays
already lie in it, and on every rank-2 model.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from pydantic import BaseModel, ConfigDict

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.lattice.linalg import nullspace, primitive_integral, rank
from kahler_lattice.lattice.model import IntClass, ManifoldModel, pair, square
from kahler_lattice.cones.certificate import orientation_class


class DualCone(BaseModel):
    """Extreme rays of a dual cone, primitive and sorted."""

    model_config = ConfigDict(frozen=True)

    model: ManifoldModel
    rays: tuple[IntClass, ...]
    clipped: bool = False
    exact: bool = True

    def labels(self) -> list[str]:
        return [r.label() for r in self.rays]


def _pairing_rows(gens: Sequence[IntClass]) -> list[list[int]]:
    """Row i is G g_i, so row . x = g_i . x."""
    model = gens[0].model
    units = [[int(i == j) for j in range(model.rank)] for i in range(model.rank)]
    return [[model.dot(g.coeffs, u) for u in units] for g in gens]


def _check_generators(gens: Sequence[IntClass]) -> ManifoldModel:
    if not gens:
        raise KahlerError(Code.E0402, message="No generators given")
    model = gens[0].model
    for g in gens:
        if g.model != model:
            raise KahlerError(Code.E0101, details={"left": str(model), "right": str(g.model)})
    if rank([list(g.coeffs) for g in gens]) < model.rank:
        raise KahlerError(Code.E0402, message="Generators do not span the lattice; the dual is not pointed",
                          details={"rank": rank([list(g.coeffs) for g in gens]), "needed": model.rank})
    return model


def _as_class(model: ManifoldModel, vec: Sequence[Fraction]) -> IntClass:
    coeffs, _ = primitive_integral(vec)
    return IntClass.of(model, coeffs)


def dual_cone_rays(generators: Sequence[IntClass]) -> DualCone:
    """Extreme rays of the closed dual of cone(generators)."""
    gens = list(generators)
    model = _check_generators(gens)
    rows = _pairing_rows(gens)
    n = model.rank
    found: dict[tuple[int, ...], IntClass] = {}
    for subset in combinations(range(len(gens)), n - 1):
        kernel = nullspace([rows[i] for i in subset], width=n)
        if len(kernel) != 1:
            continue
        ray = _as_class(model, kernel[0])
        for candidate in (ray, -ray):
            values = [pair(candidate, g) for g in gens]
            if all(v >= 0 for v in values) and any(v > 0 for v in values):
                found[candidate.coeffs] = candidate
    rays = sorted(found.values(), key=lambda r: r.sort_key())
    if rank([list(r.coeffs) for r in rays]) < n:
        raise KahlerError(Code.E0402, message="Input cone is not pointed",
                          details={"generators": [g.label() for g in gens]})
    return DualCone(model=model, rays=tuple(rays))


def _null_rays(model: ManifoldModel) -> list[IntClass]:
    """Forward null directions of a rank-2 model."""
    if model.is_blowup:
        return [IntClass.of(model, (1, 1)), IntClass.of(model, (1, -1))]
    return [IntClass.of(model, (1, 0)), IntClass.of(model, (0, 1))]


def _in_closed_forward(ray: IntClass) -> bool:
    return square(ray) >= 0 and pair(ray, orientation_class(ray.model)) > 0


def dual_curve_cone(generators: Sequence[IntClass], clip: bool = True) -> DualCone:
    """Generators of the dual of the curve cone, intersected with the closed positive cone.

    On rank 2 the intersection is computed exactly. On higher rank it is
    exact when every dual ray is already non-negative; otherwise the rays
    outside are dropped and ``exact`` is False.
    """
    gens = list(generators)
    dual = dual_cone_rays(gens)
    if not clip:
        return dual
    model = dual.model
    inside = [r for r in dual.rays if _in_closed_forward(r)]
    if len(inside) == len(dual.rays):
        return dual.model_copy(update={"clipped": True})
    if model.rank == 2:
        extra = [r for r in _null_rays(model) if all(pair(r, g) >= 0 for g in gens)]
        rays = {r.coeffs: r for r in inside + extra}
        ordered = sorted(rays.values(), key=lambda r: r.sort_key())
        return DualCone(model=model, rays=tuple(ordered), clipped=True, exact=True)
    return DualCone(model=model, rays=tuple(inside), clipped=True, exact=False)
