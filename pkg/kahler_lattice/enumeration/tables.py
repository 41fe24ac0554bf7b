"""Class tables and their on-disk cache.

Cache files are JSON documents ``{schema_version, model, tag, bound,
complete, classes}`` named by the sha256 of ``(schema_version, model, tag,
bound)``. Entries are re-verified on every load.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
import tempfile
from contextlib import contextmanager
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Any, Callable, Iterator, Optional

from pydantic import BaseModel, ConfigDict

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.common.logging_config import internal_logger
from kahler_lattice.lattice.model import (
    IntClass,
    ManifoldModel,
    adjunction_number,
    canonical_pairing,
    square,
)

SCHEMA_VERSION = 2

# number of exceptional classes of Blowup(k), k <= 8
EXCEPTIONAL_COUNTS = {0: 0, 1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}


class ClassTag(str, Enum):
    EXCEPTIONAL = "exceptional"
    SPHERICAL = "spherical"


class SquareFilter(str, Enum):
    POS = "pos"
    ZERO = "zero"
    NONNEG = "nonneg"
    MINUS_ONE = "minus_one"
    NEGATIVE = "negative"
    ANY = "any"

    def accepts(self, sq: int) -> bool:
        return {
            SquareFilter.POS: sq > 0,
            SquareFilter.ZERO: sq == 0,
            SquareFilter.NONNEG: sq >= 0,
            SquareFilter.MINUS_ONE: sq == -1,
            SquareFilter.NEGATIVE: sq < 0,
            SquareFilter.ANY: True,
        }[self]


def degree_of(e: IntClass) -> int:
    """H-degree for blow-ups, max |coefficient| on S2xS2."""
    if e.model.is_blowup:
        return abs(e.coeffs[0])
    return max(abs(x) for x in e.coeffs)


class ClassTable(BaseModel):
    """Sorted, duplicate-free list of classes with the predicate that produced it."""

    model_config = ConfigDict(frozen=True)

    model: ManifoldModel
    tag: ClassTag
    square_filter: SquareFilter = SquareFilter.ANY
    bound: int
    complete: bool = False
    classes: tuple[IntClass, ...] = ()

    @property
    def cache_tag(self) -> str:
        if self.tag is ClassTag.EXCEPTIONAL:
            return self.tag.value
        return f"{self.tag.value}:{self.square_filter.value}"

    def __iter__(self) -> Iterator[IntClass]:  # type: ignore[override]
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    @cached_property
    def class_set(self) -> frozenset[IntClass]:
        return frozenset(self.classes)

    def __contains__(self, e: IntClass) -> bool:
        return e in self.class_set

    def problems(self) -> list[str]:
        """Every way the table breaks its own invariants; empty when sound."""
        found = []
        seen = set()
        previous = None
        for e in self.classes:
            if e.model != self.model:
                found.append(f"{e.coeffs}: model {e.model} != {self.model}")
                continue
            if e in seen:
                found.append(f"{e.coeffs}: duplicate entry")
            seen.add(e)
            if previous is not None and e.sort_key() < previous.sort_key():
                found.append(f"{e.coeffs}: out of order")
            previous = e
            found.extend(f"{e.coeffs}: {msg}" for msg in self._entry_problems(e))
        if self.complete and self.tag is ClassTag.EXCEPTIONAL:
            expected = EXCEPTIONAL_COUNTS.get(self.model.k) if self.model.is_blowup else None
            if expected is None:
                found.append(f"{self.model} has no finite exceptional list")
            elif len(seen) != expected:
                found.append(f"complete table lists {len(seen)} classes, expected {expected}")
        return found

    def _entry_problems(self, e: IntClass) -> list[str]:
        msgs = []
        if self.tag is ClassTag.EXCEPTIONAL:
            if square(e) != -1 or canonical_pairing(e) != -1:
                msgs.append("fails e.e = -1, K.e = -1")
            if not 0 <= e.coeffs[0] <= self.bound:
                msgs.append("H-degree outside [0, bound]")
        else:
            if adjunction_number(e) != -2:
                msgs.append("not of genus zero")
            if not self.square_filter.accepts(square(e)):
                msgs.append(f"square rejected by filter {self.square_filter.value}")
            if degree_of(e) > self.bound:
                msgs.append("degree above bound")
        return msgs

    def to_document(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "model": self.model.model_dump(),
            "tag": self.cache_tag,
            "bound": self.bound,
            "complete": self.complete,
            "classes": [list(e.coeffs) for e in self.classes],
        }

    @classmethod
    def from_document(cls, doc: dict[str, Any]) -> "ClassTable":
        try:
            model = ManifoldModel.model_validate(doc["model"])
            tag_text = str(doc["tag"])
            tag_name, _, filter_name = tag_text.partition(":")
            table = cls(
                model=model,
                tag=ClassTag(tag_name),
                square_filter=SquareFilter(filter_name or SquareFilter.ANY.value),
                bound=int(doc["bound"]),
                complete=bool(doc.get("complete", False)),
                classes=tuple(IntClass(model=model, coeffs=tuple(c)) for c in doc["classes"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise KahlerError(Code.E0601, details=f"unreadable table document: {e}", cause=e) from e
        issues = table.problems()
        if issues:
            raise KahlerError(Code.E0601, details={"tag": tag_text, "problems": issues[:10]})
        return table


def build_table(model: ManifoldModel, tag: ClassTag, bound: int, classes, complete: bool = False,
                square_filter: SquareFilter = SquareFilter.ANY) -> ClassTable:
    """Deduplicate, sort and wrap freshly enumerated classes."""
    unique = sorted(set(classes), key=lambda e: e.sort_key())
    return ClassTable.model_construct(model=model, tag=tag, square_filter=square_filter, bound=bound,
                                      complete=complete, classes=tuple(unique))


class CacheStatus(str, Enum):
    HIT = "hit"
    MISS = "miss"
    STALE = "stale"
    DISABLED = "disabled"


class CacheProvenance(BaseModel):
    status: CacheStatus
    schema_version: int = SCHEMA_VERSION
    path: Optional[str] = None


class TableCache:
    """Read-mostly directory of content-addressed table documents."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory).expanduser()

    @staticmethod
    def key(model: ManifoldModel, tag: str, bound: Optional[int]) -> str:
        ident = json.dumps({"schema_version": SCHEMA_VERSION, "model": model.model_dump(),
                            "tag": tag, "bound": bound}, sort_keys=True)
        return hashlib.sha256(ident.encode("utf-8")).hexdigest()

    def path_for(self, model: ManifoldModel, tag: str, bound: Optional[int]) -> Path:
        return self.directory / f"{tag.replace(':', '-')}-{self.key(model, tag, bound)[:32]}.json"

    @contextmanager
    def _locked(self, target: Path, exclusive: bool):
        self.directory.mkdir(parents=True, exist_ok=True)
        lock_path = target.with_suffix(".lock")
        with open(lock_path, "a+", encoding="utf-8") as handle:
            fcntl.flock(handle, fcntl.LOCK_EX if exclusive else fcntl.LOCK_SH)
            try:
                yield
            finally:
                fcntl.flock(handle, fcntl.LOCK_UN)

    def load(self, model: ManifoldModel, tag: str, bound: Optional[int]) -> tuple[Optional[ClassTable], CacheStatus]:
        target = self.path_for(model, tag, bound)
        if not target.exists():
            return None, CacheStatus.MISS
        with self._locked(target, exclusive=False):
            try:
                doc = json.loads(target.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as e:
                raise KahlerError(Code.E0601, details=f"{target}: {e}", cause=e) from e
        if not isinstance(doc, dict):
            raise KahlerError(Code.E0601, details=f"{target}: not a table document")
        if doc.get("schema_version") != SCHEMA_VERSION:
            KahlerError(Code.W0602, details=str(target)).log(use_rich=False)
            return None, CacheStatus.STALE
        return ClassTable.from_document(doc), CacheStatus.HIT

    def store(self, table: ClassTable, bound_key: Optional[int]) -> Path:
        target = self.path_for(table.model, table.cache_tag, bound_key)
        with self._locked(target, exclusive=True):
            try:
                with tempfile.NamedTemporaryFile("w", dir=self.directory, suffix=".tmp",
                                                 delete=False, encoding="utf-8") as tmp:
                    json.dump(table.to_document(), tmp, sort_keys=True)
                    tmp_name = tmp.name
                os.replace(tmp_name, target)
            except OSError as e:
                raise KahlerError(Code.E0603, details=f"{target}: {e}", cause=e) from e
        internal_logger.debug(f"Cached {table.cache_tag} table for {table.model} at {target}")
        return target

    def get_or_build(self, model: ManifoldModel, tag: str, bound_key: Optional[int],
                     builder: Callable[[], ClassTable]) -> tuple[ClassTable, CacheProvenance]:
        table, status = self.load(model, tag, bound_key)
        target = str(self.path_for(model, tag, bound_key))
        if table is not None:
            return table, CacheProvenance(status=status, path=target)
        table = builder()
        self.store(table, bound_key)
        return table, CacheProvenance(status=status, path=target)
