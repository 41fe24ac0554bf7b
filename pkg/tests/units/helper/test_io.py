"""Reading class, generator and spec documents."""
from fractions import Fraction

import pytest

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.helper.io import (
    load_json,
    read_class,
    read_classes,
    read_int_class,
    read_spec,
    read_taubes_inputs,
)
from kahler_lattice.lattice.model import IntClass, RayClass


pytestmark = pytest.mark.white_box


class TestLoadJson:
    def test_literal(self):
        assert load_json(' [1, 2] ') == [1, 2]

    def test_file(self, tmp_path):
        path = tmp_path / "class.json"
        path.write_text('{"coeffs": [1, 0]}', encoding="utf-8")
        assert load_json(str(path)) == {"coeffs": [1, 0]}

    @pytest.mark.parametrize("text", ["[1, 2", "{'a': 1}", "no-such-file.json"])
    def test_malformed(self, text):
        with pytest.raises(KahlerError) as info:
            load_json(text)
        assert info.value.code is Code.E0802
        assert info.value.status_code == 65


class TestReadClass:
    def test_document_with_model(self, blowup, cls):
        e = read_class('{"model": "blowup:2", "coeffs": [3, 1, 1]}')
        assert e == cls(blowup(2), 3, 1, 1)

    def test_bare_list_uses_default_model(self, blowup, cls):
        assert read_class("[1, 1]", blowup(1)) == cls(blowup(1), 1, 1)

    def test_rational_coefficients(self, blowup):
        e = read_class('[3, "1/2", 1]', blowup(2))
        assert isinstance(e, RayClass)
        assert e.coeffs == (3, Fraction(1, 2), 1)

    def test_serialized_model(self, sphere, cls):
        e = read_class('{"model": {"kind": "s2xs2"}, "coeffs": [1, 2]}')
        assert e == cls(sphere, 1, 2)

    def test_missing_model(self):
        with pytest.raises(KahlerError) as info:
            read_class("[1, 0]")
        assert info.value.code is Code.E0802

    def test_wrong_length(self, blowup):
        with pytest.raises(KahlerError) as info:
            read_class("[1, 0]", blowup(2))
        assert info.value.code is Code.E0103

    @pytest.mark.parametrize("text", ['{"model": "cp2"}', '{"model": "cp2", "coeffs": 1}', '"H"'])
    def test_not_a_class(self, text):
        with pytest.raises(KahlerError) as info:
            read_class(text)
        assert info.value.code is Code.E0802

    def test_integral_required(self, blowup):
        with pytest.raises(KahlerError) as info:
            read_int_class('[1, "1/2"]', blowup(1))
        assert info.value.code is Code.E0103


class TestReadClasses:
    def test_list(self, sphere):
        gens = read_classes("[[1, 0], [0, 1]]", sphere)
        assert [g.coeffs for g in gens] == [(1, 0), (0, 1)]
        assert all(isinstance(g, IntClass) for g in gens)

    def test_generators_document(self, blowup):
        gens = read_classes('{"model": "blowup:1", "generators": [[1, 1], [0, -1]]}')
        assert gens == [blowup(1).H() - blowup(1).E(1), blowup(1).E(1)]

    def test_empty(self, sphere):
        with pytest.raises(KahlerError) as info:
            read_classes("[]", sphere)
        assert info.value.code is Code.E0802


class TestReadSpec:
    def test_default_is_generic(self, blowup):
        spec = read_spec(None, blowup(3))
        assert spec.flags.top_stratum
        assert len(spec.negative_classes) == 6

    def test_document(self, blowup):
        spec = read_spec('{"negative_classes": [[1, 1, 1, 1]]}', blowup(3))
        assert [c.coeffs for c in spec.negative_classes] == [(1, 1, 1, 1)]

    def test_flag_type_error(self, blowup):
        with pytest.raises(KahlerError) as info:
            read_spec('{"flags": {"disjoint_minus_ones": -1}}', blowup(3))
        assert info.value.code is Code.E0802

    def test_invalid_spec_keeps_its_code(self, blowup):
        with pytest.raises(KahlerError) as info:
            read_spec('{"negative_classes": [[1, 0, 0, 0]]}', blowup(3))
        assert info.value.code is Code.E0501

    def test_not_an_object(self, blowup):
        with pytest.raises(KahlerError) as info:
            read_spec("[]", blowup(3))
        assert info.value.code is Code.E0802


class TestReadTaubesInputs:
    def test_inputs(self, blowup, cls):
        text = ('[{"class": [2, 1, 0, 0], "spec": {"flags": {"disjoint_minus_ones": 3}}, "weight": "1/2"},'
                ' {"class": [2, 0, 1, 0]}]')
        items = read_taubes_inputs(text, blowup(3))
        (e1, spec1, w1), (e2, spec2, w2) = items
        assert e1 == cls(blowup(3), 2, 1, 0, 0)
        assert spec1.flags.disjoint_minus_ones == 3
        assert w1 == "1/2"
        assert spec2.flags.top_stratum
        assert w2 == 1

    @pytest.mark.parametrize("text", ["[]", '[{"spec": {}}]', '{"class": [1]}'])
    def test_malformed(self, blowup, text):
        with pytest.raises(KahlerError) as info:
            read_taubes_inputs(text, blowup(3))
        assert info.value.code is Code.E0802
