import pytest

from kahler_lattice.cones.certificate import (
    Certificate,
    Verdict,
    orientation_class,
    replay_certificate,
    segment_degree_bound,
)
from kahler_lattice.cones.decompose import decompose_SP
from kahler_lattice.cones.membership import in_CK, in_PK


@pytest.fixture
def interior(blowup, cls):
    return in_CK(cls(blowup(2), 3, 1, 1))


@pytest.fixture
def exterior(blowup, cls):
    return in_CK(cls(blowup(2), 2, 3, 0))


def test_orientation_class(blowup, sphere, cls):
    assert orientation_class(blowup(3)) == cls(blowup(3), 3, 1, 1, 1)
    assert orientation_class(blowup(9)) == blowup(9).H()
    assert orientation_class(sphere) == cls(sphere, 1, 1)


def test_segment_degree_bound(blowup, cls):
    model = blowup(10)
    h = cls(model, 4, *([1] * 10))
    assert segment_degree_bound(h, cls(model, 10, *([1] * 10))) == 4
    assert segment_degree_bound(h, h) == 1


class TestReplay:
    def test_tampered_pairings(self, interior):
        evidence = interior.evidence.model_copy(update={"pairings": (1, 1, 2)})
        assert not replay_certificate(interior.model_copy(update={"evidence": evidence}))

    def test_dropped_candidate(self, interior):
        ev = interior.evidence
        evidence = ev.model_copy(update={"candidates": ev.candidates[:2], "pairings": ev.pairings[:2]})
        assert not replay_certificate(interior.model_copy(update={"evidence": evidence}))

    def test_wrong_verdict(self, interior):
        assert not replay_certificate(interior.model_copy(update={"verdict": Verdict.OUT}))

    def test_tampered_witness_pairing(self, exterior):
        evidence = exterior.evidence.model_copy(update={"pairing": -2})
        assert not replay_certificate(exterior.model_copy(update={"evidence": evidence}))

    def test_witness_must_be_exceptional(self, exterior, blowup):
        evidence = exterior.evidence.model_copy(update={"witness": blowup(2).H().to_ray(), "pairing": 2})
        assert not replay_certificate(exterior.model_copy(update={"evidence": evidence}))

    def test_tampered_decomposition(self, blowup, cls):
        cert = decompose_SP(cls(blowup(1), 5, 2))
        parts = cert.evidence.parts
        changed = (parts[0].model_copy(update={"weight": parts[0].weight + 1}),) + parts[1:]
        evidence = cert.evidence.model_copy(update={"parts": changed})
        assert replay_certificate(cert)
        assert not replay_certificate(cert.model_copy(update={"evidence": evidence}))

    @pytest.mark.parametrize("k, coeffs", [
        (2, (3, 1, 1)),
        (2, (2, 3, 0)),
        (1, (1, 1)),
        (10, (3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1)),
    ])
    def test_json_round_trip_replays(self, blowup, cls, k, coeffs):
        cert = in_PK(cls(blowup(k), *coeffs))
        restored = Certificate.model_validate(cert.model_dump(mode="json"))
        assert restored.verdict is cert.verdict
        assert replay_certificate(restored)
