from fractions import Fraction

import pytest

from kahler_lattice.lattice.linalg import (
    fincke_pohst_form,
    floor_sqrt_fraction,
    is_symmetric,
    nullspace,
    primitive_integral,
    rank,
    signature,
)


class TestSignature:
    @pytest.mark.parametrize("gram, expected", [
        ([[1, 0, 0], [0, -1, 0], [0, 0, -1]], (1, 2, 0)),
        ([[0, 1], [1, 0]], (1, 1, 0)),
        ([[0, 0], [0, 0]], (0, 0, 2)),
        ([[1, 2], [2, 4]], (1, 0, 1)),
        ([[-2, 1], [1, -2]], (0, 2, 0)),
        ([[0, 1], [1, -2]], (1, 1, 0)),
    ])
    def test_signature(self, gram, expected):
        assert signature(gram) == expected

    def test_symmetry(self):
        assert is_symmetric([[1, 2], [2, 1]])
        assert not is_symmetric([[1, 2], [3, 1]])
        assert not is_symmetric([[1, 2]])


def test_fincke_pohst_form():
    q = fincke_pohst_form([[2, 1], [1, 2]])
    assert q[0][0] == 2
    assert q[0][1] == Fraction(1, 2)
    assert q[1][1] == Fraction(3, 2)


def test_fincke_pohst_rejects_indefinite():
    with pytest.raises(ValueError):
        fincke_pohst_form([[1, 0], [0, -1]])


def test_nullspace_and_rank():
    basis = nullspace([[1, 1, 0]])
    assert len(basis) == 2
    for vec in basis:
        assert vec[0] + vec[1] == 0
    assert nullspace([], width=2) == [[1, 0], [0, 1]]
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, Fraction(1, 2)], [0, 1]]) == 2
    assert rank([]) == 0


def test_primitive_integral():
    assert primitive_integral([Fraction(1, 2), Fraction(3, 4)]) == ((2, 3), Fraction(1, 4))
    assert primitive_integral([0, -6, 4]) == ((0, -3, 2), Fraction(2))
    with pytest.raises(ValueError):
        primitive_integral([0, 0])


@pytest.mark.parametrize("value, expected", [
    (Fraction(9, 4), 1),
    (Fraction(4), 2),
    (Fraction(0), 0),
    (Fraction(99, 11), 3),
    (Fraction(1, 3), 0),
])
def test_floor_sqrt_fraction(value, expected):
    assert floor_sqrt_fraction(value) == expected
