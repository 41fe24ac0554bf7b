import pytest

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.cones.face import face_extend, face_restrict, transport_to_last
from kahler_lattice.lattice.model import pair


def test_restrict_and_extend(blowup, cls):
    e = cls(blowup(3), 3, 1, 1, 0)
    restricted = face_restrict(e)
    assert restricted.model == blowup(2)
    assert restricted.coeffs == (3, 1, 1)
    assert face_extend(restricted) == e.to_ray()


def test_restrict_off_the_wall(blowup, cls):
    with pytest.raises(KahlerError) as info:
        face_restrict(cls(blowup(3), 3, 1, 1, 1))
    assert info.value.code is Code.E0401


def test_no_face_on_the_plane(blowup):
    with pytest.raises(KahlerError) as info:
        face_restrict(blowup(0).H())
    assert info.value.code is Code.E0401


@pytest.mark.parametrize("k, coeffs", [
    (3, (1, 1, 1, 0)),
    (3, (0, -1, 0, 0)),
    (5, (2, 1, 1, 1, 1, 1)),
    (2, (0, 0, -1)),
    (1, (0, -1)),
])
def test_transport_reaches_last_wall(blowup, cls, k, coeffs):
    model = blowup(k)
    wall = cls(model, *coeffs)
    transport = transport_to_last(wall)
    assert transport.forward(wall) == model.E(k)
    assert transport.backward(model.E(k)) == wall
    x = cls(model, 5, *([1] * k))
    assert pair(transport.forward(x), model.E(k)) == pair(x, wall)


def test_transport_needs_exceptional_wall(blowup):
    with pytest.raises(KahlerError) as info:
        transport_to_last(blowup(3).H())
    assert info.value.code is Code.E0401
