"""Exact linear algebra over the rationals.

Hot loops (diagonalization, the Fincke-Pohst factorization) run on
``Fraction`` lists; nullspaces and ranks go through sympy matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

import sympy

Number = int | Fraction
Matrix = list[list[Fraction]]


def to_fractions(rows: Sequence[Sequence[Number]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def is_symmetric(rows: Sequence[Sequence[Number]]) -> bool:
    n = len(rows)
    if any(len(row) != n for row in rows):
        return False
    return all(rows[i][j] == rows[j][i] for i in range(n) for j in range(i + 1, n))


def signature(gram: Sequence[Sequence[Number]]) -> tuple[int, int, int]:
    """Return (positive, negative, zero) counts of a symmetric form.

    Symmetric Gaussian elimination; a zero pivot with a nonzero off-diagonal
    entry is repaired by replacing e_i with e_i + e_j first.
    """
    m = to_fractions(gram)
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            if m[i][i] + 2 * m[i][j] + m[j][j] == 0:
                # e_i - e_j instead
                for t in range(n):
                    m[i][t] -= m[j][t]
                for t in range(n):
                    m[t][i] -= m[t][j]
            else:
                for t in range(n):
                    m[i][t] += m[j][t]
                for t in range(n):
                    m[t][i] += m[t][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            f = m[r][piv] / d
            if f:
                for c in active:
                    m[r][c] -= f * m[piv][c]
    return pos, neg, n - pos - neg


def fincke_pohst_form(positive: Sequence[Sequence[Number]]) -> Matrix:
    """Quadratic-completion coefficients of a positive definite form.

    Returns ``q`` with Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2.
    """
    q = to_fractions(positive)
    n = len(q)
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for col in range(k, n):
                q[k][col] -= q[k][i] * q[i][col]
    return q


def nullspace(rows: Sequence[Sequence[Number]], width: int | None = None) -> list[list[Fraction]]:
    """Rational basis of {x : rows . x = 0}."""
    if not rows:
        size = width or 0
        return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    mat = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                         for x in row] for row in rows])
    basis = mat.nullspace()
    return [[Fraction(int(v.p), int(v.q)) for v in vec] for vec in basis]


def rank(rows: Sequence[Sequence[Number]]) -> int:
    if not rows:
        return 0
    mat = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                         for x in row] for row in rows])
    return int(mat.rank())


def primitive_integral(vec: Sequence[Number]) -> tuple[tuple[int, ...], Fraction]:
    """Scale a nonzero rational vector to a primitive integral one.

    Returns ``(v, s)`` with ``vec == s * v`` and ``s > 0``.
    """
    fracs = [Fraction(x) for x in vec]
    den = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * den) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints), Fraction(g, den)


def floor_sqrt_fraction(value: Fraction) -> int:
    """Largest integer n >= 0 with n*n <= value, for value >= 0."""
    n = isqrt(value.numerator // value.denominator)
    while (n + 1) * (n + 1) <= value:
        n += 1
    while n * n > value:
        n -= 1
    return n
