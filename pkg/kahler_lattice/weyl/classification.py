"""Normal forms of spherical classes with non-negative square.

Every K-effective genus-zero class of square >= 0 on Blowup(k) reduces to
one of H, 2H, (n+1)H - nE_1, (n+1)H - nE_1 - E_2 (n >= 1), up to trailing
zeros. The square-zero class H - E_1 is listed too: it is the n = 0 member
of the last family after sorting.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional

from kahler_lattice.lattice.model import IntClass


class NormalFormType(str, Enum):
    LINE = "H"
    CONIC = "2H"
    PENCIL = "(n+1)H-nE1"
    PENCIL_WITH_POINT = "(n+1)H-nE1-E2"
    FIBER = "H-E1"


def classify_normal_form(nf: IntClass) -> Optional[tuple[NormalFormType, int]]:
    """Match a Cremona normal form against the list; returns (type, n) or None."""
    if not nf.model.is_blowup:
        return None
    a = nf.coeffs[0]
    b = list(nf.coeffs[1:])
    while b and b[-1] == 0:
        b.pop()
    if not b:
        if a == 1:
            return NormalFormType.LINE, 0
        if a == 2:
            return NormalFormType.CONIC, 0
        return None
    n = b[0]
    if len(b) == 1:
        if n == 1 and a == 1:
            return NormalFormType.FIBER, 0
        if n >= 1 and a == n + 1:
            return NormalFormType.PENCIL, n
        return None
    if len(b) == 2 and b[1] == 1 and n >= 1 and a == n + 1:
        return NormalFormType.PENCIL_WITH_POINT, n
    return None
