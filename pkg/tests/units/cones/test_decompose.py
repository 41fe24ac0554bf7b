"""Decompositions into positive spheres."""
from fractions import Fraction

import pytest

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.cones.certificate import ConeKind, Decomposition, Verdict, replay_certificate
from kahler_lattice.cones.decompose import decompose_SP, in_SK_plus
from kahler_lattice.lattice.model import is_spherical, square


def _parts(cert):
    return {p.part.coeffs: p.weight for p in cert.evidence.parts}


class TestDecomposeSP:
    def test_one_point_blowup(self, blowup, cls):
        cert = decompose_SP(cls(blowup(1), 5, 2))
        assert cert.cone is ConeKind.SK_PLUS
        assert cert.verdict is Verdict.IN
        assert _parts(cert) == {(1, 0): Fraction(1), (2, 1): Fraction(2)}

    def test_sphere_is_its_own_decomposition(self, blowup, cls):
        assert _parts(decompose_SP(cls(blowup(1), 2, 1))) == {(2, 1): Fraction(1)}
        assert _parts(decompose_SP(blowup(0).H())) == {(1,): Fraction(1)}

    def test_split_through_faces(self, blowup, cls):
        cert = decompose_SP(cls(blowup(2), 3, 1, 1))
        assert _parts(cert) == {(3, 0, 2): Fraction(1, 2), (3, 2, 0): Fraction(1, 2)}

    @pytest.mark.parametrize("k, coeffs", [
        (3, (3, 1, 1, 1)),
        (3, (5, 2, 1, 1)),
        (4, (3, 1, 1, 1, 1)),
        (4, (7, 3, 2, 2, 1)),
        (5, (3, 1, 1, 1, 1, 1)),
    ])
    def test_parts_are_positive_spheres(self, blowup, cls, k, coeffs):
        cert = decompose_SP(cls(blowup(k), *coeffs))
        assert cert.verdict is Verdict.IN
        assert isinstance(cert.evidence, Decomposition)
        for part in cert.evidence.parts:
            assert is_spherical(part.part) and square(part.part) > 0
            assert part.weight > 0
        assert replay_certificate(cert)

    @pytest.mark.parametrize("k, count", [(9, 3), (10, 16)])
    def test_beyond_eight_points(self, blowup, cls, k, count):
        e = cls(blowup(k), 4, *([1] * k))
        cert = decompose_SP(e)
        assert cert.verdict is Verdict.IN
        assert isinstance(cert.evidence, Decomposition)
        assert len(cert.evidence.parts) == count
        assert {p.weight for p in cert.evidence.parts} == {Fraction(1, count)}
        for part in cert.evidence.parts:
            assert is_spherical(part.part) and square(part.part) > 0
        assert replay_certificate(cert)

    def test_rational_query(self, blowup, ray):
        cert = decompose_SP(ray(blowup(1), Fraction(7, 2), 1))
        assert replay_certificate(cert)

    def test_outside_returns_membership_evidence(self, blowup):
        cert = decompose_SP(blowup(1).E(1))
        assert cert.verdict is Verdict.OUT
        assert cert.cone is ConeKind.SK_PLUS

    def test_boundary_is_refused(self, blowup, cls):
        cert = decompose_SP(cls(blowup(1), 1, 1))
        assert cert.verdict is Verdict.BOUNDARY
        assert not isinstance(cert.evidence, Decomposition)

    def test_sphere_bundle_rejected(self, sphere, cls):
        with pytest.raises(KahlerError) as info:
            decompose_SP(cls(sphere, 1, 1))
        assert info.value.code is Code.E0101


class TestInSKPlus:
    def test_sphere_bundle_split(self, sphere, cls):
        cert = in_SK_plus(cls(sphere, 3, 1))
        assert _parts(cert) == {(1, 4): Fraction(1, 15), (4, 1): Fraction(11, 15)}
        assert replay_certificate(cert)

    def test_diagonal(self, sphere, cls):
        assert _parts(in_SK_plus(cls(sphere, 2, 2))) == {(1, 1): Fraction(2)}

    def test_null_direction(self, sphere, cls):
        cert = in_SK_plus(cls(sphere, 1, 0))
        assert cert.verdict is Verdict.BOUNDARY
        assert cert.cone is ConeKind.SK_PLUS

    def test_blowup_delegates(self, blowup, cls):
        cert = in_SK_plus(cls(blowup(10), 3, *([1] * 10)))
        assert cert.verdict is Verdict.OUT
