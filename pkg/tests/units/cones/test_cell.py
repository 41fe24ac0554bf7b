import pytest

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.cones.cell import PCell, adapted_basis, is_corner, kappa, p_cell


class TestPCell:
    def test_standard_cell(self, blowup):
        model = blowup(3)
        cell = p_cell(model)
        assert cell.complete
        assert len(cell.walls) == 6
        assert not cell.k_wall
        assert kappa(cell.corner, cell.basis) == -model.canonical_class()

    def test_k_wall_beyond_eight(self, blowup):
        cell = p_cell(blowup(9), degree_bound=1)
        assert cell.k_wall
        assert not cell.complete
        assert len(cell.walls) == 9 + 36 + 1

    def test_adapted_basis_at_h(self, blowup):
        model = blowup(3)
        assert adapted_basis(p_cell(model), model.H()) == (model.E(1), model.E(2), model.E(3))

    def test_cremona_image_of_h_is_a_corner(self, blowup, cls):
        cell = p_cell(blowup(3))
        assert is_corner(cell, cls(blowup(3), 2, 1, 1, 1))
        assert not is_corner(cell, cls(blowup(3), 1, 1, 0, 0))
        assert not is_corner(cell, cls(blowup(3), 3, 1, 1, 1))

    def test_projective_plane(self, blowup):
        cell = p_cell(blowup(0))
        assert cell.walls == ()
        assert is_corner(cell, blowup(0).H())

    def test_invalid_corner(self, blowup, cls):
        model = blowup(3)
        with pytest.raises(KahlerError) as info:
            PCell(model=model, corner=cls(model, 2, 0, 0, 0), basis=(model.E(1), model.E(2), model.E(3)),
                  walls=(), complete=True)
        assert info.value.code is Code.E0401

    def test_sphere_bundle_rejected(self, sphere):
        with pytest.raises(KahlerError) as info:
            p_cell(sphere)
        assert info.value.code is Code.E0101
