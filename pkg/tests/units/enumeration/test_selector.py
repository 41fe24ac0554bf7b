"""Partner selection for positive spherical classes."""
import pytest

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.enumeration.classes import spherical_classes
from kahler_lattice.enumeration.selector import select_He
from kahler_lattice.enumeration.tables import SquareFilter
from kahler_lattice.lattice.model import j_genus, pair, square


class TestSelectHe:
    def test_pencil_with_point(self, blowup, cls):
        model = blowup(3)
        partner = select_He(cls(model, 2, 1, 1, 0))
        assert partner == cls(model, 1, 1, 0, 0)
        assert pair(partner, cls(model, 2, 1, 1, 0)) == 1

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_one_point_pencils(self, blowup, cls, n):
        model = blowup(1)
        assert select_He(cls(model, n + 1, n)) == cls(model, 1, 1)

    def test_conics(self, blowup, cls):
        assert select_He(cls(blowup(1), 2, 0)) == blowup(1).H()
        assert select_He(cls(blowup(0), 2)) == blowup(0).H()
        assert pair(blowup(0).H(), cls(blowup(0), 2)) == 2

    def test_sphere_bundle(self, sphere, cls):
        assert select_He(cls(sphere, 1, 4)) == cls(sphere, 0, 1)
        assert select_He(cls(sphere, 3, 1)) == cls(sphere, 1, 0)

    def test_carried_back_through_the_word(self, blowup, cls):
        model = blowup(3)
        e = cls(model, 3, 1, 2, 0)
        partner = select_He(e)
        assert pair(partner, e) == 1
        assert square(partner) == 0

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_partner_for_every_positive_sphere(self, blowup, k):
        for e in spherical_classes(blowup(k), 4, SquareFilter.POS):
            partner = select_He(e)
            assert j_genus(partner) == 0
            assert square(partner) >= 0
            assert pair(partner, e) in (1, 2)
            if pair(partner, e) == 2:
                assert square(partner) * 4 == square(e)

    @pytest.mark.parametrize("k, coeffs", [
        (0, (3,)),
        (1, (1, 1)),
        (2, (1, 1, 1)),
    ])
    def test_rejects(self, blowup, cls, k, coeffs):
        with pytest.raises(KahlerError) as info:
            select_He(cls(blowup(k), *coeffs))
        assert info.value.code is Code.E0301

    @pytest.mark.parametrize("k, coeffs", [
        (1, (3, -1)),
        (3, (3, -1, 0, 0)),
    ])
    def test_rejects_classes_that_are_not_k_effective(self, blowup, cls, k, coeffs):
        e = cls(blowup(k), *coeffs)
        with pytest.raises(KahlerError) as info:
            select_He(e)
        assert info.value.code is Code.E0301
        assert "not K-effective" in info.value.message
