"""Partner selection for positive spherical classes.

Given e of genus zero with e.e > 0, pick a spherical H_e of square >= 0
meeting e once, or twice when H_e is proportional to e. Blow-ups are reduced
to a Cremona normal form first; the partner of the normal form is carried
back through the reduction word. Only K-effective classes have a partner.
"""

from __future__ import annotations

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.enumeration.classes import is_k_effective
from kahler_lattice.lattice.model import IntClass, ManifoldModel, is_spherical, pair, square
from kahler_lattice.weyl.classification import NormalFormType, classify_normal_form
from kahler_lattice.weyl.reflection import cremona_reduce


def _partner_for_normal_form(model: ManifoldModel, nf: IntClass) -> IntClass:
    match = classify_normal_form(nf)
    if match is None:
        raise KahlerError(Code.E0301, message=f"{nf.label()} is not a listed normal form",
                          details="the class is not K-effective")
    kind, _ = match
    if kind in (NormalFormType.LINE, NormalFormType.CONIC):
        return model.H()
    if kind in (NormalFormType.PENCIL, NormalFormType.PENCIL_WITH_POINT):
        return model.H() - model.E(1)
    raise KahlerError(Code.E0301, message=f"{nf.label()} has square zero")


def select_He(e: IntClass) -> IntClass:  # pylint: disable=invalid-name
    """A spherical class H_e of square >= 0 with H_e.e in {1, 2}.

    The pairing is 2 only when H_e is proportional to e (e = 2H up to
    Cremona equivalence). Blow-ups with k >= 2 go through the normal form
    and the reduction word carries the partner back.
    """
    if not is_spherical(e) or square(e) <= 0:
        raise KahlerError(Code.E0301, message=f"{e.label()} is not a positive spherical class",
                          details={"square": square(e)})
    if not is_k_effective(e):
        raise KahlerError(Code.E0301, message=f"{e.label()} is not K-effective",
                          details="select_He needs a class pairing non-negatively with every exceptional class")
    model = e.model
    if not model.is_blowup:
        a, b = e.coeffs
        if a == 1:
            return IntClass.of(model, (0, 1))
        if b == 1:
            return IntClass.of(model, (1, 0))
        raise KahlerError(Code.E0301, message=f"{e.label()} is not of the form H1+lH2 or lH1+H2")
    if model.k == 0:
        return model.H()
    if model.k == 1:
        if e.coeffs == (2, 0):
            return model.H()
        partner = model.H() - model.E(1)
    else:
        nf, word = cremona_reduce(e)
        partner = word.apply_inverse(_partner_for_normal_form(model, nf))
    if pair(partner, e) not in (1, 2):
        raise KahlerError(Code.E0301, message=f"{e.label()} has no listed partner",
                          details={"partner": partner.label(), "pairing": pair(partner, e)})
    return partner
