"""Reading class, generator and spec documents from the command line.

Every argument that takes JSON accepts either the literal text or a path
to a file holding it.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.configs.spec import CurveConeSpec
from kahler_lattice.lattice.model import AnyClass, IntClass, ManifoldModel, class_from_coeffs


def load_json(text: str) -> Any:
    """Parse ``text`` as JSON, or read it from the file it names."""
    stripped = text.strip()
    if not stripped.startswith(("{", "[")):
        path = Path(stripped).expanduser()
        if not path.is_file():
            raise KahlerError(Code.E0802, message=f"'{text}' is neither JSON nor a readable file")
        try:
            stripped = path.read_text(encoding="utf-8")
        except OSError as e:
            raise KahlerError(Code.E0802, details=f"{path}: {e}", cause=e) from e
    try:
        return json.loads(stripped)
    except json.JSONDecodeError as e:
        raise KahlerError(Code.E0802, details=f"line {e.lineno} column {e.colno}: {e.msg}", cause=e) from e


def _model_of(value: Any, default: Optional[ManifoldModel]) -> ManifoldModel:
    if value is None:
        if default is None:
            raise KahlerError(Code.E0802, message="Class document has no model; pass --model")
        return default
    if isinstance(value, str):
        return ManifoldModel.parse(value)
    try:
        return ManifoldModel.model_validate(value)
    except ValidationError as e:
        raise KahlerError(Code.E0802, details=str(e), cause=e) from e


def class_from_document(doc: Any, default_model: Optional[ManifoldModel] = None) -> AnyClass:
    """``{"model": ..., "coeffs": [...]}`` or a bare coefficient list."""
    if isinstance(doc, list):
        doc = {"coeffs": doc}
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise KahlerError(Code.E0802, message="A class document needs a 'coeffs' list")
    model = _model_of(doc.get("model"), default_model)
    coeffs = doc["coeffs"]
    if not isinstance(coeffs, list):
        raise KahlerError(Code.E0802, message="'coeffs' must be a list")
    if len(coeffs) != model.rank:
        raise KahlerError(Code.E0103, details=f"{len(coeffs)} coefficients for {model}")
    try:
        return class_from_coeffs(model, coeffs)
    except (ValidationError, ValueError, ZeroDivisionError) as e:
        raise KahlerError(Code.E0103, details=str(e), cause=e) from e


def read_class(text: str, default_model: Optional[ManifoldModel] = None) -> AnyClass:
    return class_from_document(load_json(text), default_model)


def read_int_class(text: str, default_model: Optional[ManifoldModel] = None) -> IntClass:
    e = read_class(text, default_model)
    if not isinstance(e, IntClass):
        raise KahlerError(Code.E0103, message=f"{e.label()} must have integral coefficients")
    return e


def read_classes(text: str, default_model: Optional[ManifoldModel] = None) -> list[IntClass]:
    """A list of classes, or ``{"model": ..., "generators": [...]}``."""
    doc = load_json(text)
    model = default_model
    if isinstance(doc, dict):
        model = _model_of(doc.get("model"), default_model)
        doc = doc.get("generators", doc.get("classes"))
    if not isinstance(doc, list) or not doc:
        raise KahlerError(Code.E0802, message="Expected a non-empty list of classes")
    found = []
    for item in doc:
        e = class_from_document(item, model)
        if not isinstance(e, IntClass):
            raise KahlerError(Code.E0103, message=f"Generator {e.label()} must be integral")
        found.append(e)
    return found


def spec_from_document(doc: Any, model: ManifoldModel) -> CurveConeSpec:
    if not isinstance(doc, dict):
        raise KahlerError(Code.E0802, message="A spec document must be an object")
    data = dict(doc)
    data["model"] = _model_of(data.get("model"), model)
    try:
        return CurveConeSpec.model_validate(data)
    except ValidationError as e:
        raise KahlerError(Code.E0802, details=str(e), cause=e) from e


def read_spec(text: Optional[str], model: ManifoldModel, degree_bound: Optional[int] = None) -> CurveConeSpec:
    """The spec document, or the generic top-stratum spec when none is given."""
    if text is None:
        return CurveConeSpec.generic(model, degree_bound)
    return spec_from_document(load_json(text), model)


def read_taubes_inputs(
    text: str,
    model: Optional[ManifoldModel],
    degree_bound: Optional[int] = None,
) -> list[tuple[IntClass, CurveConeSpec, Any]]:
    """``[{"class": ..., "spec": ..., "weight": "1/2"}, ...]``; weight defaults to 1."""
    doc = load_json(text)
    if not isinstance(doc, list) or not doc:
        raise KahlerError(Code.E0802, message="taubes-class inputs must be a non-empty list")
    found = []
    for item in doc:
        if not isinstance(item, dict) or "class" not in item:
            raise KahlerError(Code.E0802, message="Each input needs a 'class' entry")
        e = class_from_document(item["class"], model)
        if not isinstance(e, IntClass):
            raise KahlerError(Code.E0103, message=f"{e.label()} must be integral")
        if "spec" in item:
            spec = spec_from_document(item["spec"], e.model)
        else:
            spec = CurveConeSpec.generic(e.model, degree_bound)
        found.append((e, spec, item.get("weight", 1)))
    return found
