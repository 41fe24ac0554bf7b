"""Boundary faces of the canonical-positive cone.

The face on the wall of E_k is a copy of the cone of Blowup(k - 1): drop
the last coefficient. A face on any other exceptional wall is carried to
the E_k face by a reflection-group element first.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.lattice.model import AnyClass, IntClass, RayClass, is_exceptional, pair
from kahler_lattice.weyl.reflection import ReductionWord, Root, cremona_reduce, reflect


def face_restrict(e: AnyClass) -> RayClass:
    """Strip the E_k coefficient of a class with e.E_k = 0."""
    q = RayClass.coerce(e)
    model = q.model
    if not model.is_blowup or model.k == 0:
        raise KahlerError(Code.E0401, message=f"{model} has no E_k face")
    if q.coeffs[-1] != 0:
        raise KahlerError(Code.E0401, message=f"{q.label()} is not on the E{model.k} wall",
                          details={"pairing": str(pair(q, model.E(model.k)))})
    return RayClass.of(model.smaller(), q.coeffs[:-1])


def face_extend(e: AnyClass) -> RayClass:
    """Zero-pad into Blowup(k + 1)."""
    q = RayClass.coerce(e)
    if not q.model.is_blowup:
        raise KahlerError(Code.E0401, message="Face extension needs a blow-up model")
    bigger = type(q.model).blowup(q.model.k + 1)
    return RayClass.of(bigger, (*q.coeffs, 0))


class FaceTransport(BaseModel):
    """Reflection-group element sending an exceptional wall to E_k."""

    model_config = ConfigDict(frozen=True)

    wall: IntClass
    word: ReductionWord
    swap: Optional[Root] = None

    def forward(self, e: AnyClass) -> AnyClass:
        e = self.word.apply(e)
        return reflect(e, self.swap) if self.swap is not None else e

    def backward(self, e: AnyClass) -> AnyClass:
        if self.swap is not None:
            e = reflect(e, self.swap)
        return self.word.apply_inverse(e)


def transport_to_last(wall: IntClass) -> FaceTransport:
    """Element taking the exceptional class ``wall`` to E_k."""
    model = wall.model
    if not is_exceptional(wall):
        raise KahlerError(Code.E0401, message=f"{wall.label()} is not exceptional")
    nf, word = cremona_reduce(wall)
    e1 = model.E(1)
    if nf != e1:
        raise KahlerError(Code.E0401, message=f"{wall.label()} does not reduce to E1",
                          details={"normal_form": nf.label()})
    swap = Root.transposition(model, 1, model.k) if model.k > 1 else None
    transport = FaceTransport(wall=wall, word=word, swap=swap)
    if transport.forward(wall) != model.E(model.k):
        raise KahlerError(Code.X0403, message="Face transport missed E_k", details={"wall": wall.label()})
    return transport
