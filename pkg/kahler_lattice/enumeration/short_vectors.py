"""Exact lattice-ellipsoid enumeration (Fincke-Pohst) for negative definite forms.

Works entirely over ``Fraction``: the form is completed to squares once,
then integer coordinates are bracketed from the last one down. Bracketing
uses an integer over-estimate of the square root and filters each
candidate exactly, so no floating point enters the decision.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import Optional, Sequence

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.lattice.linalg import (
    Number,
    fincke_pohst_form,
    floor_sqrt_fraction,
    is_symmetric,
    signature,
)


def short_vectors(
    gram: Sequence[Sequence[Number]],
    norm_bound: Number,
    center: Optional[Sequence[Number]] = None,
) -> list[tuple[int, ...]]:
    """All integer ``v`` with ``(v - c).G.(v - c) >= -norm_bound``.

    ``G`` must be symmetric negative definite; ``c`` defaults to the origin.
    The result is sorted lexicographically.
    """
    n = len(gram)
    if not is_symmetric(gram):
        raise KahlerError(Code.E0104, message="Gram matrix is not symmetric")
    if n == 0:
        return [()]
    if signature(gram) != (0, n, 0):
        raise KahlerError(Code.E0104, details={"signature": list(signature(gram))})
    bound = Fraction(norm_bound)
    if bound < 0:
        return []
    q = fincke_pohst_form([[-x for x in row] for row in gram])
    c = [Fraction(x) for x in center] if center is not None else [Fraction(0)] * n
    found: list[tuple[int, ...]] = []
    x = [0] * n

    def descend(i: int, remaining: Fraction) -> None:
        # shift for coordinate i from the already fixed coordinates j > i
        t = -c[i] + sum((q[i][j] * (x[j] - c[j]) for j in range(i + 1, n)), Fraction(0))
        s = remaining / q[i][i]
        r = floor_sqrt_fraction(s) + 1
        lo = -t - r
        hi = -t + r
        for xi in range(floor(lo), ceil(hi) + 1):
            term = (xi + t) ** 2
            if term > s:
                continue
            x[i] = xi
            rest = remaining - q[i][i] * term
            if i == 0:
                found.append(tuple(x))
            else:
                descend(i - 1, rest)
        x[i] = 0

    descend(n - 1, bound)
    return sorted(found)


def box_search(
    gram: Sequence[Sequence[Number]],
    norm_bound: Number,
    radius: int,
) -> list[tuple[int, ...]]:
    """Naive box scan oracle: every v in [-radius, radius]^n with v.G.v >= -norm_bound."""
    n = len(gram)
    hits = []
    for v in product(range(-radius, radius + 1), repeat=n):
        value = sum(gram[i][j] * v[i] * v[j] for i in range(n) for j in range(n))
        if -value <= norm_bound:
            hits.append(tuple(v))
    return sorted(hits)
