"""P-cells: the chamber of the canonical-positive cone cut out by its walls.

A corner is a class x of square 1 through which k mutually orthogonal
exceptional walls pass; those walls and x form an adapted standard basis.
"""

from __future__ import annotations

from typing import Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, model_validator

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.enumeration.classes import exceptional_classes
from kahler_lattice.lattice.model import IntClass, ManifoldModel, pair, square


def kappa(corner: IntClass, basis: tuple[IntClass, ...]) -> IntClass:
    """3x - sum(alpha_i) for an adapted basis (x; alpha_1, ..., alpha_k)."""
    total = corner * 3
    for alpha in basis:
        total = total - alpha
    return total


class PCell(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: ManifoldModel
    corner: IntClass
    basis: tuple[IntClass, ...]
    walls: tuple[IntClass, ...]
    complete: bool

    @model_validator(mode="after")
    def _check(self) -> "PCell":
        if square(self.corner) != 1:
            raise KahlerError(Code.E0401, message=f"Corner {self.corner.label()} has square {square(self.corner)}")
        k_class = self.model.canonical_class()
        for wall in self.walls:
            if square(wall) != -1 and wall != k_class:
                raise KahlerError(Code.E0401, message=f"{wall.label()} is not a wall class")
        if kappa(self.corner, self.basis) != -k_class:
            raise KahlerError(Code.E0401, message="Adapted basis does not give -K")
        return self

    @property
    def k_wall(self) -> bool:
        return self.model.canonical_class() in self.walls

    def walls_through(self, x: IntClass) -> list[IntClass]:
        return [w for w in self.walls if square(w) == -1 and pair(w, x) == 0]


def p_cell(model: ManifoldModel, degree_bound: Optional[int] = None) -> PCell:
    """The standard cell with corner H and basis E_1..E_k.

    For k >= 9 the wall list is bounded by ``degree_bound`` and also holds K.
    """
    if not model.is_blowup:
        raise KahlerError(Code.E0101, message="P-cells are defined on blow-up models")
    table = exceptional_classes(model, degree_bound)
    walls = list(table)
    if model.k >= 9:
        walls.append(model.canonical_class())
    basis = tuple(model.E(i) for i in range(1, model.k + 1))
    return PCell(model=model, corner=model.H(), basis=basis, walls=tuple(walls), complete=table.complete)


def adapted_basis(cell: PCell, x: IntClass) -> Optional[tuple[IntClass, ...]]:
    """k pairwise orthogonal walls through x, or None when x is not a corner."""
    k = cell.model.k
    if square(x) != 1:
        return None
    through = cell.walls_through(x)
    if k == 0:
        return ()
    graph = nx.Graph()
    graph.add_nodes_from(range(len(through)))
    for i in range(len(through)):
        for j in range(i + 1, len(through)):
            if pair(through[i], through[j]) == 0:
                graph.add_edge(i, j)
    for clique in nx.find_cliques(graph):
        if len(clique) >= k:
            chosen = sorted((through[i] for i in clique[:k]), key=lambda w: w.sort_key())
            return tuple(chosen)
    return None


def is_corner(cell: PCell, x: IntClass) -> bool:
    return adapted_basis(cell, x) is not None
