"""Class tables, their invariants and the on-disk cache."""
import json

import pytest

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.enumeration.classes import exceptional_classes, spherical_classes
from kahler_lattice.enumeration.tables import (
    SCHEMA_VERSION,
    CacheStatus,
    ClassTable,
    ClassTag,
    SquareFilter,
    TableCache,
    build_table,
    degree_of,
)


@pytest.fixture
def cache(tmp_path):
    return TableCache(tmp_path / "tables")


# --- tables ---


class TestClassTable:
    def test_build_sorts_and_deduplicates(self, blowup):
        model = blowup(2)
        table = build_table(model, ClassTag.EXCEPTIONAL, 1, [model.E(2), model.E(1), model.E(2)])
        assert table.classes == (model.E(1), model.E(2))
        assert len(table) == 2
        assert model.E(1) in table

    def test_problems_report_bad_entries(self, blowup):
        model = blowup(2)
        table = build_table(model, ClassTag.EXCEPTIONAL, 1, [model.H()])
        assert any("fails e.e = -1" in p for p in table.problems())

    def test_spherical_filter_problems(self, blowup, cls):
        model = blowup(1)
        table = build_table(model, ClassTag.SPHERICAL, 3, [cls(model, 1, 0)], square_filter=SquareFilter.ZERO)
        assert any("filter zero" in p for p in table.problems())

    def test_cache_tag(self, blowup):
        assert exceptional_classes(blowup(2)).cache_tag == "exceptional"
        assert spherical_classes(blowup(2), 2, SquareFilter.POS).cache_tag == "spherical:pos"

    def test_degree_of(self, blowup, sphere, cls):
        assert degree_of(cls(blowup(2), -3, 1, 0)) == 3
        assert degree_of(cls(sphere, 1, -4)) == 4

    def test_document_round_trip(self, blowup):
        table = spherical_classes(blowup(2), 3, SquareFilter.NONNEG)
        doc = table.to_document()
        assert doc["schema_version"] == SCHEMA_VERSION
        assert doc["tag"] == "spherical:nonneg"
        restored = ClassTable.from_document(doc)
        assert restored.classes == table.classes
        assert restored.square_filter is SquareFilter.NONNEG

    @pytest.mark.parametrize("mutate", [
        lambda doc: doc.pop("classes"),
        lambda doc: doc.update(tag="mystery"),
        lambda doc: doc.update(classes=[[1, 0, 0]]),
        lambda doc: doc.update(classes=[[0, -1]]),
        lambda doc: doc.update(classes=[[0, "x", 0]]),
        lambda doc: doc["classes"].pop(),
    ])
    def test_corrupted_documents(self, blowup, mutate):
        doc = exceptional_classes(blowup(2)).to_document()
        mutate(doc)
        with pytest.raises(KahlerError) as info:
            ClassTable.from_document(doc)
        assert info.value.code is Code.E0601

    def test_incomplete_exceptional_table(self, blowup):
        table = exceptional_classes(blowup(4))
        partial = build_table(table.model, ClassTag.EXCEPTIONAL, table.bound, table.classes[1:], complete=True)
        assert partial.problems() == ["complete table lists 9 classes, expected 10"]

    def test_bounded_table_may_be_partial(self, blowup):
        model = blowup(9)
        table = build_table(model, ClassTag.EXCEPTIONAL, 1, [model.E(1), model.E(2)])
        assert table.problems() == []

    def test_complete_flag_needs_finite_list(self, blowup):
        model = blowup(9)
        table = build_table(model, ClassTag.EXCEPTIONAL, 1, [model.E(1)], complete=True)
        assert table.problems() == ["blowup:9 has no finite exceptional list"]


# --- cache ---


class TestTableCache:
    def test_key_is_deterministic(self, blowup):
        key = TableCache.key(blowup(2), "exceptional", None)
        assert key == TableCache.key(blowup(2), "exceptional", None)
        assert key != TableCache.key(blowup(2), "exceptional", 3)
        assert key != TableCache.key(blowup(3), "exceptional", None)

    def test_path_names_tag(self, cache, blowup):
        path = cache.path_for(blowup(2), "spherical:pos", 4)
        assert path.parent == cache.directory
        assert path.name.startswith("spherical-pos-")
        assert path.suffix == ".json"

    def test_miss_then_hit(self, cache, blowup, mocker):
        model = blowup(3)
        builder = mocker.Mock(side_effect=lambda: exceptional_classes(model))
        table, first = cache.get_or_build(model, "exceptional", None, builder)
        assert first.status is CacheStatus.MISS
        again, second = cache.get_or_build(model, "exceptional", None, builder)
        assert second.status is CacheStatus.HIT
        assert builder.call_count == 1
        assert again.classes == table.classes
        assert second.path == str(cache.path_for(model, "exceptional", None))

    def test_store_writes_sorted_json(self, cache, blowup):
        path = cache.store(exceptional_classes(blowup(2)), None)
        doc = json.loads(path.read_text(encoding="utf-8"))
        assert list(doc) == sorted(doc)
        assert doc["classes"] == [[0, -1, 0], [0, 0, -1], [1, 1, 1]]

    def test_stale_schema_is_rebuilt(self, cache, blowup, mocker):
        model = blowup(2)
        path = cache.path_for(model, "exceptional", None)
        path.parent.mkdir(parents=True)
        doc = exceptional_classes(model).to_document()
        doc["schema_version"] = SCHEMA_VERSION - 1
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert cache.load(model, "exceptional", None) == (None, CacheStatus.STALE)
        builder = mocker.Mock(side_effect=lambda: exceptional_classes(model))
        _, provenance = cache.get_or_build(model, "exceptional", None, builder)
        assert provenance.status is CacheStatus.STALE
        assert builder.call_count == 1
        assert json.loads(path.read_text(encoding="utf-8"))["schema_version"] == SCHEMA_VERSION

    @pytest.mark.parametrize("content", ["{not json", "[1, 2]"])
    def test_unreadable_file(self, cache, blowup, content):
        model = blowup(2)
        path = cache.path_for(model, "exceptional", None)
        path.parent.mkdir(parents=True)
        path.write_text(content, encoding="utf-8")
        with pytest.raises(KahlerError) as info:
            cache.load(model, "exceptional", None)
        assert info.value.code is Code.E0601

    def test_tampered_entry(self, cache, blowup):
        model = blowup(2)
        path = cache.store(exceptional_classes(model), None)
        doc = json.loads(path.read_text(encoding="utf-8"))
        doc["classes"][0] = [2, 0, 0]
        path.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(KahlerError) as info:
            cache.load(model, "exceptional", None)
        assert info.value.code is Code.E0601

    def test_missing_entry_in_complete_table(self, cache, blowup):
        model = blowup(4)
        path = cache.store(exceptional_classes(model), None)
        doc = json.loads(path.read_text(encoding="utf-8"))
        del doc["classes"][3]
        path.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(KahlerError) as info:
            cache.load(model, "exceptional", None)
        assert info.value.code is Code.E0601
        assert "expected 10" in info.value.details["problems"][-1]
