"""Exceptional and spherical class enumeration."""
import pytest

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.enumeration.classes import (
    COMPLETE_EXCEPTIONAL_DEGREE,
    exceptional_classes,
    exceptional_classes_lattice,
    exceptional_classes_sliced,
    is_k_effective,
    spherical_classes,
)
from kahler_lattice.enumeration.tables import SquareFilter
from kahler_lattice.lattice.model import is_exceptional, is_spherical, square

EXCEPTIONAL_COUNTS = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56}


# --- exceptional classes ---


class TestExceptional:
    def test_small_tables(self, blowup, cls):
        assert list(exceptional_classes(blowup(0))) == []
        assert list(exceptional_classes(blowup(1))) == [blowup(1).E(1)]
        model = blowup(2)
        assert set(exceptional_classes(model)) == {model.E(1), model.E(2), cls(model, 1, 1, 1)}

    @pytest.mark.parametrize("k, count", sorted(EXCEPTIONAL_COUNTS.items()))
    def test_counts(self, blowup, k, count):
        table = exceptional_classes(blowup(k))
        assert len(table) == count
        assert table.complete
        assert table.bound == COMPLETE_EXCEPTIONAL_DEGREE[k]
        assert table.problems() == []

    @pytest.mark.slow
    def test_eight_points(self, blowup):
        table = exceptional_classes(blowup(8))
        assert len(table) == 240
        assert max(e.coeffs[0] for e in table) == 6

    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_lattice_and_sliced_searches_agree(self, blowup, k):
        model = blowup(k)
        assert exceptional_classes_lattice(model) == exceptional_classes_sliced(
            model, COMPLETE_EXCEPTIONAL_DEGREE[k])

    def test_bounded_beyond_eight(self, blowup, cls):
        model = blowup(10)
        table = exceptional_classes(model, degree_bound=3)
        assert not table.complete
        assert all(is_exceptional(e) and e.coeffs[0] <= 3 for e in table)
        assert cls(model, 3, 2, 1, 1, 1, 1, 1, 1, 0, 0, 0) in table
        # solves the equations but lies outside the orbit of E1
        assert cls(model, 3, 1, 1, 1, 1, 1, 1, 1, 1, 1, -1) not in table

    def test_unbounded_beyond_eight(self, blowup):
        with pytest.raises(KahlerError) as info:
            exceptional_classes(blowup(9))
        assert info.value.code is Code.E0301

    def test_parallel_sliced_search(self, blowup):
        model = blowup(9)
        assert exceptional_classes_sliced(model, 3, workers=3) == exceptional_classes_sliced(model, 3)

    def test_needs_blowup(self, sphere):
        with pytest.raises(KahlerError) as info:
            exceptional_classes(sphere)
        assert info.value.code is Code.E0101


# --- spherical classes ---


class TestSpherical:
    def test_projective_plane(self, blowup, cls):
        model = blowup(0)
        assert list(spherical_classes(model, 2)) == [cls(model, 1), cls(model, 2)]

    def test_positive_on_one_point(self, blowup, cls):
        model = blowup(1)
        table = spherical_classes(model, 3, SquareFilter.POS)
        assert set(table) == {cls(model, 1, 0), cls(model, 2, 0), cls(model, 2, 1), cls(model, 3, 2)}

    def test_not_k_effective_excluded(self, blowup, cls):
        model = blowup(1)
        e = cls(model, 3, -1)
        assert is_spherical(e) and square(e) > 0
        assert e not in spherical_classes(model, 3, SquareFilter.NONNEG)

    def test_minus_one_filter(self, blowup):
        table = spherical_classes(blowup(3), 2, SquareFilter.MINUS_ONE)
        assert len(table) == 6

    def test_entries_satisfy_filter(self, blowup):
        for square_filter in SquareFilter:
            table = spherical_classes(blowup(3), 3, square_filter)
            assert table.problems() == []

    def test_sphere_bundle(self, sphere):
        table = spherical_classes(sphere, 3)
        assert len(table) == 13
        assert all(1 in e.coeffs for e in table)
        assert all(min(e.coeffs) >= 0 for e in table if square(e) >= 0)

    def test_degree_bound_must_be_positive(self, blowup):
        with pytest.raises(KahlerError) as info:
            spherical_classes(blowup(2), 0)
        assert info.value.code is Code.E0301


class TestKEffective:
    @pytest.mark.parametrize("k, coeffs, expected", [
        (2, (2, 1, 1), True),
        (2, (1, 1, 1), False),
        (1, (3, -1), False),
        (4, (2, 1, 1, 1, 0), True),
        (4, (3, -1, 0, 0, 0), False),
    ])
    def test_blowups(self, blowup, cls, k, coeffs, expected):
        assert is_k_effective(cls(blowup(k), *coeffs)) is expected

    def test_sphere_bundle(self, sphere, cls):
        assert is_k_effective(cls(sphere, 1, 2))
        assert not is_k_effective(cls(sphere, 1, -2))
