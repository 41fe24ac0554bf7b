"""Manifold models, homology classes and the intersection pairing.

Blow-up model ``Blowup(k)``: basis H, E_1..E_k with pairing diag(1, -1, ..., -1).
A class is stored as ``(a; b_1, ..., b_k)`` meaning ``a*H - sum(b_i * E_i)``, so
the pairing of coefficient vectors is ``a*a' - sum(b_i * b_i')``.

Sphere-bundle model ``S2xS2``: basis H_1, H_2 with the hyperbolic pairing.
A class ``(a, b)`` means ``a*H_1 + b*H_2``.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Iterable, Sequence

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    model_serializer,
    model_validator,
)

from kahler_lattice.common.error import Code, KahlerError
from kahler_lattice.lattice.linalg import primitive_integral, signature

Number = int | Fraction


class ModelKind(str, Enum):
    BLOWUP = "blowup"
    SPHERE_BUNDLE = "s2xs2"


class ManifoldModel(BaseModel):
    """Which lattice a class lives in."""

    model_config = ConfigDict(frozen=True)

    kind: ModelKind
    k: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_kind(self) -> "ManifoldModel":
        if self.kind is ModelKind.SPHERE_BUNDLE and self.k != 0:
            raise ValueError("the s2xs2 model takes no blow-up count")
        return self

    @model_serializer
    def _serialize(self) -> dict[str, Any]:
        if self.kind is ModelKind.BLOWUP:
            return {"kind": self.kind.value, "k": self.k}
        return {"kind": self.kind.value}

    @classmethod
    def blowup(cls, k: int) -> "ManifoldModel":
        return cls(kind=ModelKind.BLOWUP, k=k)

    @classmethod
    def sphere_bundle(cls) -> "ManifoldModel":
        return cls(kind=ModelKind.SPHERE_BUNDLE)

    @classmethod
    def parse(cls, text: str) -> "ManifoldModel":
        """Parse ``blowup:K``, ``cp2`` or ``s2xs2``."""
        token = text.strip().lower()
        if token in ("s2xs2", "s2*s2", "sphere_bundle"):
            return cls.sphere_bundle()
        if token == "cp2":
            return cls.blowup(0)
        kind, _, count = token.partition(":")
        if kind != "blowup" or not count.isdigit():
            raise KahlerError(Code.E0103, message=f"Unknown model '{text}'",
                              details="expected 'blowup:K' or 's2xs2'")
        return cls.blowup(int(count))

    @property
    def is_blowup(self) -> bool:
        return self.kind is ModelKind.BLOWUP

    @property
    def rank(self) -> int:
        return self.k + 1 if self.is_blowup else 2

    @property
    def labels(self) -> tuple[str, ...]:
        if self.is_blowup:
            return ("H",) + tuple(f"E{i}" for i in range(1, self.k + 1))
        return ("H1", "H2")

    @property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        if self.is_blowup:
            return tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(self.rank))
                         for i in range(self.rank))
        return ((0, 1), (1, 0))

    @property
    def canonical_coeffs(self) -> tuple[int, ...]:
        if self.is_blowup:
            return (-3,) + (-1,) * self.k
        return (-2, -2)

    def dot(self, u: Sequence[Number], v: Sequence[Number]) -> Number:
        """Pairing of two raw coefficient vectors."""
        if self.is_blowup:
            return u[0] * v[0] - sum(x * y for x, y in zip(u[1:], v[1:]))
        return u[0] * v[1] + u[1] * v[0]

    def canonical_class(self) -> "IntClass":
        return IntClass.of(self, self.canonical_coeffs)

    def zero(self) -> "IntClass":
        return IntClass.of(self, (0,) * self.rank)

    def basis_class(self, index: int) -> "IntClass":
        """Basis element by position: 0 is H (or H_1)."""
        coeffs = [0] * self.rank
        if self.is_blowup and index > 0:
            coeffs[index] = -1
        else:
            coeffs[index] = 1
        return IntClass.of(self, coeffs)

    def H(self) -> "IntClass":  # pylint: disable=invalid-name
        self._require_blowup("H")
        return self.basis_class(0)

    def E(self, i: int) -> "IntClass":  # pylint: disable=invalid-name
        """Exceptional basis class E_i, 1-based."""
        self._require_blowup("E_i")
        if not 1 <= i <= self.k:
            raise KahlerError(Code.E0103, message=f"E{i} does not exist on {self}")
        return self.basis_class(i)

    def smaller(self) -> "ManifoldModel":
        self._require_blowup("face restriction")
        if self.k == 0:
            raise KahlerError(Code.E0101, message="Blowup(0) has no smaller model")
        return ManifoldModel.blowup(self.k - 1)

    def _require_blowup(self, what: str) -> None:
        if not self.is_blowup:
            raise KahlerError(Code.E0101, message=f"{what} requires a blow-up model, got {self}")

    def __str__(self) -> str:
        return f"blowup:{self.k}" if self.is_blowup else "s2xs2"


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rational coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"cannot read {value!r} as an exact rational")


def _fraction_to_json(value: Fraction) -> int | str:
    return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


Rational = Annotated[Fraction, BeforeValidator(_to_fraction), PlainSerializer(_fraction_to_json)]


def _strict_int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"integral coefficient expected, got {value!r}")
    return value


StrictInt = Annotated[int, BeforeValidator(_strict_int)]


class _ClassBase(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    model: ManifoldModel

    @model_validator(mode="after")
    def _check_rank(self):
        if len(self.coeffs) != self.model.rank:  # type: ignore[attr-defined]
            raise ValueError(f"expected {self.model.rank} coefficients for {self.model}, "
                             f"got {len(self.coeffs)}")  # type: ignore[attr-defined]
        return self

    @property
    def a(self) -> Number:
        return self.coeffs[0]  # type: ignore[attr-defined]

    @property
    def b(self) -> tuple[Number, ...]:
        return tuple(self.coeffs[1:])  # type: ignore[attr-defined]

    def dot(self, other: "_ClassBase") -> Number:
        return pair(self, other)

    def sort_key(self) -> tuple[Number, ...]:
        return tuple(self.coeffs)  # type: ignore[attr-defined]

    def label(self) -> str:
        """Human-readable form such as ``2H-E1-E2`` or ``H1+3H2``."""
        terms = []
        signed = list(self.coeffs)  # type: ignore[attr-defined]
        if self.model.is_blowup:
            signed = [signed[0]] + [-x for x in signed[1:]]
        for coeff, name in zip(signed, self.model.labels):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if mag == 1:
                body = name
            elif isinstance(mag, Fraction) and mag.denominator != 1:
                body = f"({mag}){name}"
            else:
                body = f"{mag}{name}"
            terms.append(f"{sign}{body}")
        if not terms:
            return "0"
        text = "".join(terms)
        return text[1:] if text.startswith("+") else text


class IntClass(_ClassBase):
    """Integral class in the model basis."""

    coeffs: tuple[StrictInt, ...]

    @classmethod
    def of(cls, model: ManifoldModel, coeffs: Iterable[int]) -> "IntClass":
        """Trusted constructor for internal hot paths."""
        values = tuple(int(c) for c in coeffs)
        if len(values) != model.rank:
            raise KahlerError(Code.E0103, details=f"{len(values)} coefficients for {model}")
        return cls.model_construct(model=model, coeffs=values)

    def to_ray(self) -> "RayClass":
        return RayClass.of(self.model, self.coeffs)

    def __add__(self, other: "IntClass") -> "IntClass":
        _same_model(self, other)
        return IntClass.of(self.model, (x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "IntClass") -> "IntClass":
        _same_model(self, other)
        return IntClass.of(self.model, (x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "IntClass":
        return IntClass.of(self.model, (-x for x in self.coeffs))

    def __mul__(self, scalar: Number):
        if isinstance(scalar, int):
            return IntClass.of(self.model, (scalar * x for x in self.coeffs))
        return self.to_ray() * scalar

    __rmul__ = __mul__

    def __str__(self) -> str:
        return self.label()


class RayClass(_ClassBase):
    """Rational class; coefficients are kept in lowest terms by ``Fraction``."""

    coeffs: tuple[Rational, ...]

    @classmethod
    def of(cls, model: ManifoldModel, coeffs: Iterable[Number]) -> "RayClass":
        values = tuple(Fraction(c) for c in coeffs)
        if len(values) != model.rank:
            raise KahlerError(Code.E0103, details=f"{len(values)} coefficients for {model}")
        return cls.model_construct(model=model, coeffs=values)

    @classmethod
    def coerce(cls, e: "IntClass | RayClass") -> "RayClass":
        return e if isinstance(e, RayClass) else e.to_ray()

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_int(self) -> IntClass:
        if not self.is_integral():
            raise KahlerError(Code.E0103, message=f"{self.label()} is not integral")
        return IntClass.of(self.model, (c.numerator for c in self.coeffs))

    def primitive(self) -> tuple[IntClass, Fraction]:
        """Primitive integral class on the same ray and the positive scale to reach self."""
        vec, scale = primitive_integral(self.coeffs)
        return IntClass.of(self.model, vec), scale

    def __add__(self, other: "IntClass | RayClass") -> "RayClass":
        _same_model(self, other)
        return RayClass.of(self.model, (x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "IntClass | RayClass") -> "RayClass":
        _same_model(self, other)
        return RayClass.of(self.model, (x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "RayClass":
        return RayClass.of(self.model, (-x for x in self.coeffs))

    def __mul__(self, scalar: Number) -> "RayClass":
        q = Fraction(scalar)
        return RayClass.of(self.model, (q * x for x in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return self.label()


AnyClass = IntClass | RayClass


def _same_model(e1: _ClassBase, e2: _ClassBase) -> None:
    if e1.model != e2.model:
        raise KahlerError(Code.E0101, details={"left": str(e1.model), "right": str(e2.model)})


def pair(e1: AnyClass, e2: AnyClass) -> Number:
    """Intersection pairing; an ``int`` for integral inputs, else a ``Fraction``."""
    _same_model(e1, e2)
    value = e1.model.dot(e1.coeffs, e2.coeffs)
    if isinstance(e1, RayClass) or isinstance(e2, RayClass):
        return Fraction(value)
    return value


def square(e: AnyClass) -> Number:
    return pair(e, e)


def canonical_pairing(e: AnyClass) -> Number:
    """K . e"""
    value = e.model.dot(e.model.canonical_coeffs, e.coeffs)
    return Fraction(value) if isinstance(e, RayClass) else value


def adjunction_number(e: IntClass) -> int:
    """e.e + K.e"""
    return square(e) + canonical_pairing(e)


def _require_int(e: AnyClass) -> IntClass:
    if isinstance(e, RayClass):
        return e.to_int()
    return e


def j_genus(e: IntClass) -> int:
    """(e.e + K.e)/2 + 1; raises on a parity violation."""
    e = _require_int(e)
    adj = adjunction_number(e)
    if adj % 2:
        raise KahlerError(Code.E0102, details={"class": list(e.coeffs), "model": str(e.model)})
    return adj // 2 + 1


def j_dimension(e: IntClass) -> int:
    """(e.e - K.e)/2, equal to e.e + 1 on genus-zero classes."""
    e = _require_int(e)
    total = square(e) - canonical_pairing(e)
    if total % 2:
        raise KahlerError(Code.E0102, details={"class": list(e.coeffs), "model": str(e.model)})
    iota = total // 2
    if is_spherical(e) and iota != square(e) + 1:
        raise KahlerError(Code.X0105, details={"class": list(e.coeffs), "iota": iota, "square": square(e)})
    return iota


def l_value(e: IntClass) -> int:
    return max(j_dimension(e), 0)


def is_spherical(e: IntClass) -> bool:
    """Lattice genus zero."""
    return adjunction_number(e) == -2


def is_exceptional(e: IntClass) -> bool:
    return square(e) == -1 and canonical_pairing(e) == -1


class ClassInvariants(BaseModel):
    """Invariant bundle printed by ``kahler invariants``."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    g: int
    iota: int
    l: int
    sq: int
    ke: int = Field(serialization_alias="Ke", validation_alias="Ke")
    adjunction: int


def invariants(e: IntClass) -> ClassInvariants:
    g = j_genus(e)
    iota = j_dimension(e)
    return ClassInvariants(g=g, iota=iota, l=max(iota, 0), sq=square(e),
                           Ke=canonical_pairing(e), adjunction=adjunction_number(e))


def model_signature(model: ManifoldModel) -> tuple[int, int, int]:
    return signature(model.gram)


def class_from_coeffs(model: ManifoldModel, coeffs: Sequence[Any]) -> AnyClass:
    """IntClass when every coefficient is integral, RayClass otherwise."""
    fracs = [_to_fraction(c) for c in coeffs]
    if all(f.denominator == 1 for f in fracs):
        return IntClass(model=model, coeffs=tuple(int(f) for f in fracs))
    return RayClass(model=model, coeffs=tuple(fracs))

