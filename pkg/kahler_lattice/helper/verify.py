"""Property suites behind ``kahler verify``.

``run_lemmas`` checks the lattice-level lemmas on one model at desk scale;
``run_acceptance`` sweeps the acceptance table across models. Both return a
:class:`SuiteReport` listing every property with how many cases it checked
and how many failed. All randomness comes from one seeded ``random.Random``.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable, Optional

from pydantic import BaseModel, Field, computed_field

from kahler_lattice.cones.certificate import Verdict, orientation_class, replay_certificate
from kahler_lattice.cones.decompose import decompose_SP, in_SK_plus
from kahler_lattice.cones.dual import dual_cone_rays, dual_curve_cone
from kahler_lattice.cones.face import face_extend, face_restrict
from kahler_lattice.cones.membership import in_CK, in_PK
from kahler_lattice.common.logging_config import execution_logger
from kahler_lattice.configs.census import (
    Shape,
    check_dimension_bounds,
    classify_shape,
    enumerate_configurations,
)
from kahler_lattice.configs.nef import NefVerdict, is_nef, taubes_class, vanishing_locus
from kahler_lattice.configs.spec import BundleCase, CurveConeSpec, SpecFlags, SphereBundleCase
from kahler_lattice.enumeration.classes import (
    COMPLETE_EXCEPTIONAL_DEGREE,
    exceptional_classes,
    exceptional_classes_sliced,
    is_k_effective,
    spherical_classes,
)
from kahler_lattice.enumeration.selector import select_He
from kahler_lattice.enumeration.tables import EXCEPTIONAL_COUNTS, ClassTable, ClassTag, SquareFilter, TableCache
from kahler_lattice.lattice.model import (
    IntClass,
    ManifoldModel,
    RayClass,
    adjunction_number,
    canonical_pairing,
    is_spherical,
    model_signature,
    pair,
    square,
)
from kahler_lattice.weyl.classification import classify_normal_form
from kahler_lattice.weyl.reflection import cremona_reduce, reflect, simple_roots

MAX_EXAMPLES = 5

# wall-clock limits in seconds for the full-scale acceptance run
RUNTIME_LIMITS = {"exceptional_k_le_6": 10.0, "exceptional_k_8": 300.0, "sp_round_trip": 120.0}


class PropertyResult(BaseModel):
    name: str
    checked: int = 0
    failures: int = 0
    examples: list[str] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.failures == 0


class SuiteReport(BaseModel):
    suite: str
    seed: int
    parameters: dict[str, int] = Field(default_factory=dict)
    properties: list[PropertyResult] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)


class Tally:
    """Counts cases for one property and keeps the first few failures."""

    def __init__(self, name: str):
        self.result = PropertyResult(name=name)

    def check(self, ok: bool, describe: Callable[[], str] | str = "") -> bool:
        self.result.checked += 1
        if not ok:
            self.result.failures += 1
            if len(self.result.examples) < MAX_EXAMPLES:
                self.result.examples.append(describe() if callable(describe) else describe)
        return ok


# --- sampling ---

def random_class(model: ManifoldModel, rng: random.Random, max_degree: int) -> IntClass:
    if not model.is_blowup:
        return IntClass.of(model, (rng.randint(-max_degree, max_degree), rng.randint(-max_degree, max_degree)))
    a = rng.randint(-max_degree, max_degree)
    return IntClass.of(model, (a, *(rng.randint(-max_degree, max_degree) for _ in range(model.k))))


def random_rational_class(model: ManifoldModel, rng: random.Random, max_degree: int) -> RayClass:
    """A class with coefficients in thirds, bounded by ``max_degree``."""
    top = 3 * max_degree
    return RayClass.of(model, tuple(Fraction(rng.randint(-top, top), 3) for _ in range(model.rank)))


def random_forward_ray(model: ManifoldModel, rng: random.Random, max_degree: int) -> RayClass:
    """A rational class with a > 0 and small non-negative b, denominators up to 3."""
    a = Fraction(rng.randint(1, max_degree * 3), rng.randint(1, 3))
    if not model.is_blowup:
        return RayClass.of(model, (a, Fraction(rng.randint(1, max_degree * 3), rng.randint(1, 3))))
    b = [Fraction(rng.randint(0, max(1, int(a * 3) // 2)), 3) for _ in range(model.k)]
    return RayClass.of(model, (a, *b))


def sample_interior(model: ManifoldModel, rng: random.Random, count: int, max_degree: int,
                    attempts: int = 50) -> list[RayClass]:
    """Up to ``count`` seeded points with an In verdict for P_K."""
    found = []
    for _ in range(count * attempts):
        if len(found) >= count:
            break
        x = random_forward_ray(model, rng, max_degree)
        if in_PK(x, degree_bound=max_degree).verdict is Verdict.IN:
            found.append(x)
    return found


def sample_exterior(model: ManifoldModel, rng: random.Random, count: int, max_degree: int,
                    attempts: int = 50) -> list[RayClass]:
    found = []
    for _ in range(count * attempts):
        if len(found) >= count:
            break
        x = random_class(model, rng, max_degree).to_ray()
        if square(x) == 0:
            continue
        if in_PK(x, degree_bound=max_degree).verdict is Verdict.OUT:
            found.append(x)
    return found


# --- individual properties ---

def check_signature(model: ManifoldModel) -> PropertyResult:
    tally = Tally("model_signature")
    expected = (1, model.rank - 1, 0)
    tally.check(model_signature(model) == expected, f"{model}: {model_signature(model)}")
    sphere = ManifoldModel.sphere_bundle()
    tally.check(model_signature(sphere) == (1, 1, 0), f"s2xs2: {model_signature(sphere)}")
    return tally.result


def check_parity(model: ManifoldModel, rng: random.Random, samples: int, max_degree: int) -> PropertyResult:
    tally = Tally("adjunction_parity")
    for _ in range(samples):
        e = random_class(model, rng, max_degree)
        tally.check(adjunction_number(e) % 2 == 0, e.label)
    return tally.result


def check_light_cone(model: ManifoldModel, rng: random.Random, samples: int, max_degree: int) -> PropertyResult:
    """Forward classes of non-negative square pair non-negatively."""
    tally = Tally("light_cone")
    w = orientation_class(model)
    pool = []
    for _ in range(samples * 20):
        e = random_class(model, rng, max_degree)
        if square(e) >= 0 and pair(e, w) > 0:
            pool.append(e)
        if len(pool) >= samples:
            break
    for u, v in zip(pool, reversed(pool)):
        tally.check(pair(u, v) >= 0, lambda u=u, v=v: f"{u.label()} . {v.label()} = {pair(u, v)}")
    return tally.result


def check_reflections(model: ManifoldModel, rng: random.Random, samples: int, max_degree: int) -> PropertyResult:
    """Simple reflections are involutive isometries fixing K."""
    tally = Tally("reflection_isometry")
    roots = simple_roots(model)
    for _ in range(samples):
        e, f = random_class(model, rng, max_degree), random_class(model, rng, max_degree)
        for r in roots:
            re, rf = reflect(e, r), reflect(f, r)
            ok = (pair(re, rf) == pair(e, f) and canonical_pairing(re) == canonical_pairing(e)
                  and reflect(re, r) == e)
            tally.check(ok, lambda e=e, r=r: f"{e.label()} under {r.label()}")
    return tally.result


def check_reduction_replay(model: ManifoldModel, rng: random.Random, samples: int,
                           max_degree: int) -> PropertyResult:
    tally = Tally("reduction_replay")
    for _ in range(samples):
        e = random_class(model, rng, max_degree)
        nf, word = cremona_reduce(e)
        ok = word.replay() and word.apply(e) == nf and word.apply_inverse(nf) == e
        tally.check(ok, e.label)
    return tally.result


def check_exceptional_oracle(table: ClassTable, workers: int = 1) -> PropertyResult:
    """The complete table equals the degree-sliced search up to the derived degree."""
    tally = Tally("exceptional_oracle")
    model = table.model
    oracle = exceptional_classes_sliced(model, COMPLETE_EXCEPTIONAL_DEGREE[model.k], workers)
    tally.check(set(table) == set(oracle),
                lambda: f"{model}: table {len(table)} vs oracle {len(oracle)}")
    tally.check(len(table) == EXCEPTIONAL_COUNTS[model.k], lambda: f"{model}: {len(table)} classes")
    return tally.result


def check_weyl_stability(table: ClassTable) -> PropertyResult:
    tally = Tally("exceptional_weyl_stability")
    roots = simple_roots(table.model)
    for e in table:
        for r in roots:
            image = reflect(e, r)
            tally.check(image in table, lambda e=e, r=r: f"{e.label()} -> {reflect(e, r).label()}")
    return tally.result


def check_cremona_classification(nonneg: ClassTable) -> PropertyResult:
    """Every spherical class of square >= 0 reduces to a listed normal form."""
    tally = Tally("cremona_classification")
    for e in nonneg:
        nf, word = cremona_reduce(e)
        tally.check(classify_normal_form(nf) is not None and word.replay(),
                    lambda e=e, nf=nf: f"{e.label()} -> {nf.label()}")
    return tally.result


def check_pair_s_plus(nonneg: ClassTable, exceptional: ClassTable) -> list[PropertyResult]:
    """S+ pairs positively with S>=0 and non-negatively with exceptional classes."""
    positive = [e for e in nonneg if square(e) > 0]
    spheres = Tally("pair_positive_spheres")
    for e in positive:
        for f in nonneg:
            spheres.check(pair(e, f) > 0, lambda e=e, f=f: f"{e.label()} . {f.label()} = {pair(e, f)}")
    against = Tally("pair_positive_exceptional")
    for e in positive:
        for x in exceptional:
            against.check(pair(e, x) >= 0, lambda e=e, x=x: f"{e.label()} . {x.label()} = {pair(e, x)}")
    mutual = Tally("pair_exceptional_exceptional")
    classes = list(exceptional)
    for i, x in enumerate(classes):
        for y in classes[i + 1:]:
            mutual.check(pair(x, y) >= 0, lambda x=x, y=y: f"{x.label()} . {y.label()} = {pair(x, y)}")
    return [spheres.result, against.result, mutual.result]


def _proportional(u: IntClass, v: IntClass) -> bool:
    cu, cv = u.coeffs, v.coeffs
    return all(cu[i] * cv[j] == cu[j] * cv[i] for i in range(len(cu)) for j in range(i + 1, len(cu)))


def check_select_he(nonneg: ClassTable) -> PropertyResult:
    tally = Tally("select_He_contract")
    for e in nonneg:
        if square(e) <= 0:
            continue
        h = select_He(e)
        value = pair(h, e)
        ok = value in (1, 2) and square(h) >= 0 and (value == 1 or _proportional(h, e))
        tally.check(ok, lambda e=e, h=h: f"{e.label()} -> {h.label()} ({pair(h, e)})")
    return tally.result


def check_select_he_examples() -> PropertyResult:
    tally = Tally("select_He_explicit_choices")
    sphere = ManifoldModel.sphere_bundle()
    one, zero = ManifoldModel.blowup(1), ManifoldModel.blowup(0)
    for level in range(0, 4):
        e = IntClass.of(sphere, (1, level))
        tally.check(select_He(e) == IntClass.of(sphere, (0, 1)), f"H1+{level}H2")
    for n in range(1, 5):
        e = IntClass.of(one, (n + 1, n))
        tally.check(select_He(e) == one.H() - one.E(1), e.label())
    tally.check(select_He(IntClass.of(zero, (1,))) == zero.H(), "H on CP2")
    tally.check(select_He(IntClass.of(zero, (2,))) == zero.H(), "2H on CP2")
    return tally.result


def check_in_ck_oracle(model: ManifoldModel, rng: random.Random, samples: int, max_degree: int,
                       workers: int = 1) -> PropertyResult:
    """The bounded segment search agrees with the complete table.

    Samples alternate between integral and rational classes.
    """
    tally = Tally("in_CK_oracle")
    if not 1 <= model.k <= 8:
        return tally.result
    checked = 0
    while checked < samples:
        sampler = random_class if checked % 2 == 0 else random_rational_class
        e = sampler(model, rng, max_degree)
        if square(e) == 0:
            continue
        checked += 1
        table = in_CK(e, method="table")
        bounded = in_CK(e, method="bounded", workers=workers)
        tally.check(table.verdict == bounded.verdict,
                    lambda e=e, t=table, b=bounded: f"{e.label()}: {t.verdict.value} vs {b.verdict.value}")
    return tally.result


def check_certificate_replay(model: ManifoldModel, rng: random.Random, samples: int,
                             max_degree: int) -> PropertyResult:
    tally = Tally("certificate_replay")
    for _ in range(samples):
        e = random_class(model, rng, max_degree)
        if square(e) == 0:
            continue
        cert = in_PK(e, degree_bound=max_degree)
        tally.check(replay_certificate(cert), e.label)
    return tally.result


def check_decomposition(model: ManifoldModel, rng: random.Random, samples: int,
                        max_degree: int) -> list[PropertyResult]:
    """Interior points decompose into positive spheres; exterior points are rejected by both cones."""
    inside = Tally("decompose_interior")
    for x in sample_interior(model, rng, samples, max_degree):
        cert = decompose_SP(x, degree_bound=max_degree)
        parts = getattr(cert.evidence, "parts", ())
        ok = (cert.verdict is Verdict.IN and replay_certificate(cert) and all(
            is_spherical(p.part) and square(p.part) > 0 and is_k_effective(p.part) for p in parts))
        inside.check(ok, x.label)
    outside = Tally("reject_exterior")
    for x in sample_exterior(model, rng, samples, max_degree):
        pk = in_PK(x, degree_bound=max_degree)
        sk = in_SK_plus(x, degree_bound=max_degree)
        ok = (pk.verdict is Verdict.OUT and sk.verdict is Verdict.OUT
              and replay_certificate(pk) and replay_certificate(sk))
        outside.check(ok, x.label)
    return [inside.result, outside.result]


def check_face(model: ManifoldModel, rng: random.Random, samples: int, max_degree: int) -> PropertyResult:
    """The last face restricts into the smaller cone and extends back onto the boundary."""
    tally = Tally("face_inclusion")
    if not model.is_blowup or model.k < 1 or model.k > 8:
        return tally.result
    for x in sample_interior(model.smaller(), rng, samples, max_degree):
        y = face_extend(x)
        on_face = in_PK(y, degree_bound=max_degree)
        back = face_restrict(y)
        ok = (on_face.verdict is Verdict.BOUNDARY and back == x
              and in_PK(back, degree_bound=max_degree).verdict is Verdict.IN)
        tally.check(ok, lambda x=x, c=on_face: f"{x.label()}: {c.verdict.value}")
    return tally.result


def check_duals(levels: int = 5) -> PropertyResult:
    """Nef cones of the rank-two models are the expected two-ray cones."""
    tally = Tally("rank_two_duals")
    sphere, one = ManifoldModel.sphere_bundle(), ManifoldModel.blowup(1)
    for level in range(levels + 1):
        case = (SphereBundleCase(case=BundleCase.NO_NEGATIVE) if level == 0
                else SphereBundleCase(case=BundleCase.SECTION_A, p=-level))
        spec = CurveConeSpec(model=sphere, flags=SpecFlags(sphere_bundle_case=case))
        got = set(dual_curve_cone(spec.curve_cone_generators()).rays)
        want = {IntClass.of(sphere, (1, level)), IntClass.of(sphere, (0, 1))}
        tally.check(got == want, lambda level=level, got=got: f"s2xs2 l={level}: {sorted(r.label() for r in got)}")
        spec = CurveConeSpec(model=one, flags=SpecFlags(negative_section=-level))
        gens = spec.curve_cone_generators()
        got = set(dual_curve_cone(gens).rays)
        want = {IntClass.of(one, (level + 1, level)), IntClass.of(one, (1, 1))}
        tally.check(got == want, lambda level=level, got=got: f"blowup:1 l={level}: {sorted(r.label() for r in got)}")
        twice = set(dual_cone_rays(list(dual_cone_rays(gens).rays)).rays)
        tally.check(twice == set(gens), f"blowup:1 l={level}: dual of dual")
    return tally.result


def check_dimension_bounds_for(e: IntClass, spec: Optional[CurveConeSpec], max_parts: int,
                               max_degree: int, tally: Tally, shapes: Tally, workers: int = 1) -> None:
    census = enumerate_configurations(e, spec, max_parts=max_parts, max_degree=max_degree, workers=workers)
    for config in census.configurations:
        report = check_dimension_bounds(config)
        if report.skipped:
            continue
        tally.check(report.holds, lambda c=config: f"{e.label()}: {c.labels()}")
        if report.equality:
            shape = classify_shape(config)
            shapes.check(shape is not Shape.OTHER, lambda c=config: f"{e.label()}: {c.labels()}")


def check_taubes(k: int) -> PropertyResult:
    tally = Tally("taubes_class")
    model = ManifoldModel.blowup(k)
    spec = CurveConeSpec(model=model, flags=SpecFlags(disjoint_minus_ones=k))
    items = [(model.H() * 2 - model.E(i), spec) for i in range(1, k + 1)]
    result = taubes_class(items)
    want = IntClass.of(model, (2 * k,) + (1,) * k).to_ray()
    tally.check(result.ok and result.total == want, lambda: f"k={k}: common {[c.label() for c in result.common]}")
    return tally.result


def check_standard_form(max_k: int = 12, max_level: int = 6, degree_bound: int = 8) -> PropertyResult:
    """lH - sum(E_i) with l^2 > max(k, 9) is symplectic; the converse for 9 <= k <= 12."""
    tally = Tally("standard_form_screen")
    for k in range(1, max_k + 1):
        model = ManifoldModel.blowup(k)
        for level in range(1, max_level + 1):
            h = IntClass.of(model, (level,) + (1,) * k)
            expected = level * level > max(k, 9)
            ck = in_CK(h, degree_bound=degree_bound).verdict is Verdict.IN
            pk = in_PK(h, degree_bound=degree_bound).verdict
            on_k_wall = 3 * level == k
            if expected:
                tally.check(ck and (pk is Verdict.IN or (on_k_wall and pk is Verdict.BOUNDARY)),
                            f"k={k} l={level}: CK {ck}, PK {pk.value}")
            elif k >= 9:
                tally.check(not ck and pk is not Verdict.IN, f"k={k} l={level}: CK {ck}, PK {pk.value}")
    return tally.result


def check_s_plus_nef(nonneg: ClassTable) -> PropertyResult:
    """On the top stratum every positive spherical class is nef."""
    tally = Tally("s_plus_nef")
    spec = CurveConeSpec.generic(nonneg.model)
    for e in nonneg:
        if square(e) > 0:
            result = is_nef(e, spec)
            tally.check(result.verdict is NefVerdict.NEF,
                        lambda e=e, r=result: f"{e.label()}: {r.verdict.value} ({r.criterion.value})")
    return tally.result


def check_del_pezzo(model: ManifoldModel, degree_bound: int = 8) -> PropertyResult:
    """Tamed in the class -K: top stratum, -K ample and inside the K-symplectic cone."""
    tally = Tally("del_pezzo")
    spec = CurveConeSpec(model=model, negative_classes=tuple(exceptional_classes(model)),
                         flags=SpecFlags(del_pezzo=True))
    minus_k = -model.canonical_class()
    tally.check(spec.flags.top_stratum, f"{model}: top stratum not implied")
    tally.check(is_nef(minus_k, spec).verdict is NefVerdict.NEF and not vanishing_locus(minus_k, spec),
                f"{model}: -K is not ample")
    tally.check(in_CK(minus_k, degree_bound=degree_bound).verdict is Verdict.IN,
                f"{model}: -K outside the K-symplectic cone")
    return tally.result


def check_runtime(timings: dict[str, float], limits: Optional[dict[str, float]] = None) -> PropertyResult:
    """Measured stages stay under their wall-clock limits."""
    tally = Tally("runtime_bounds")
    limits = RUNTIME_LIMITS if limits is None else limits
    for stage, seconds in sorted(timings.items()):
        limit = limits.get(stage)
        if limit is not None:
            tally.check(seconds < limit, f"{stage}: {seconds:.1f}s, limit {limit:.0f}s")
    return tally.result


# --- suites ---

def _table(model: ManifoldModel, tag: ClassTag, bound: Optional[int], builder, cache: Optional[TableCache]):
    if cache is None:
        return builder()
    key_tag = tag.value if tag is ClassTag.EXCEPTIONAL else f"{tag.value}:{SquareFilter.NONNEG.value}"
    table, provenance = cache.get_or_build(model, key_tag, bound, builder)
    execution_logger.debug(f"{key_tag} table for {model}: cache {provenance.status.value}")
    return table


def run_lemmas(k: int, max_degree: int = 6, seed: int = 0, samples: int = 40,
               cache: Optional[TableCache] = None, workers: int = 1) -> SuiteReport:
    """Lattice lemmas on Blowup(k) at degree ``max_degree``."""
    model = ManifoldModel.blowup(k)
    rng = random.Random(seed)
    bound = None if k <= 8 else max_degree
    exceptional = _table(model, ClassTag.EXCEPTIONAL, bound,
                         lambda: exceptional_classes(model, bound, workers), cache)
    nonneg = _table(model, ClassTag.SPHERICAL, max_degree,
                    lambda: spherical_classes(model, max_degree, SquareFilter.NONNEG, workers), cache)
    props = [
        check_signature(model),
        check_parity(model, rng, samples, max_degree),
        check_light_cone(model, rng, samples, max_degree),
        check_reflections(model, rng, samples, max_degree),
        check_reduction_replay(model, rng, samples, max_degree),
        check_cremona_classification(nonneg),
        *check_pair_s_plus(nonneg, exceptional),
        check_select_he(nonneg),
        check_certificate_replay(model, rng, samples, max_degree),
        check_duals(),
    ]
    if 1 <= k <= 8:
        props.append(check_exceptional_oracle(exceptional, workers))
        props.append(check_in_ck_oracle(model, rng, samples, max_degree, workers))
        props.append(check_face(model, rng, max(1, samples // 4), max_degree))
    if 3 <= k <= 8:
        props.append(check_weyl_stability(exceptional))
    if k <= 8:
        props.extend(check_decomposition(model, rng, max(1, samples // 4), max_degree))
        props.append(check_s_plus_nef(nonneg))
        props.append(check_del_pezzo(model, max_degree))
    for p in props:
        execution_logger.info(f"{p.name}: {p.checked} checked, {p.failures} failed")
    return SuiteReport(suite="lemmas", seed=seed, parameters={"k": k, "max_degree": max_degree, "samples": samples},
                       properties=props)


def _merge(name: str, results: list[PropertyResult]) -> PropertyResult:
    merged = PropertyResult(name=name)
    for r in results:
        merged.checked += r.checked
        merged.failures += r.failures
        merged.examples.extend(r.examples[:MAX_EXAMPLES - len(merged.examples)])
    return merged


def run_acceptance(seed: int = 0, max_k: int = 6, exceptional_k: int = 8, samples: int = 100,
                   oracle_samples: int = 500, classification_degree: int = 12, pairing_degree: int = 8,
                   census_degree: int = 6, cache: Optional[TableCache] = None, workers: int = 1) -> SuiteReport:
    """The acceptance table; the defaults are the full-scale run."""
    rng = random.Random(seed)
    props: list[PropertyResult] = []

    tables = {}
    timings: dict[str, float] = {}
    for k in range(1, exceptional_k + 1):
        model = ManifoldModel.blowup(k)
        started = time.perf_counter()
        tables[k] = _table(model, ClassTag.EXCEPTIONAL, None, lambda m=model: exceptional_classes(m, None, workers), cache)
        stage = "exceptional_k_le_6" if k <= 6 else f"exceptional_k_{k}"
        timings[stage] = timings.get(stage, 0.0) + time.perf_counter() - started
    props.append(_merge("exceptional_enumeration", [check_exceptional_oracle(t, workers) for t in tables.values()]))

    classification, pairing, select, nef = [], [], [], []
    for k in range(0, max_k + 1):
        model = ManifoldModel.blowup(k)
        wide = spherical_classes(model, classification_degree, SquareFilter.NONNEG, workers)
        classification.append(check_cremona_classification(wide))
        narrow = spherical_classes(model, pairing_degree, SquareFilter.NONNEG, workers)
        exc = tables.get(k) or exceptional_classes(model, None, workers)
        pairing.extend(check_pair_s_plus(narrow, exc))
        select.append(check_select_he(narrow))
        nef.append(check_s_plus_nef(narrow))
    select.append(check_select_he_examples())
    props.append(_merge("cremona_classification", classification))
    props.append(_merge("pair_s_plus", pairing))
    props.append(_merge("select_He_contract", select))
    props.append(_merge("s_plus_nef", nef))
    props.append(check_duals())

    round_trip, faces, oracle = [], [], []
    for k in range(0, max_k + 1):
        model = ManifoldModel.blowup(k)
        started = time.perf_counter()
        round_trip.extend(check_decomposition(model, rng, samples, pairing_degree))
        timings["sp_round_trip"] = timings.get("sp_round_trip", 0.0) + time.perf_counter() - started
        if k >= 2:
            faces.append(check_face(model, rng, max(1, samples // 2), pairing_degree))
    for k in range(1, exceptional_k + 1):
        oracle.append(check_in_ck_oracle(ManifoldModel.blowup(k), rng, oracle_samples, pairing_degree, workers))
    props.append(_merge("sp_round_trip", round_trip))
    props.append(_merge("face_inclusion", faces))

    bounds, shapes = Tally("dimension_bounds"), Tally("equality_shapes")
    one, zero, two, four = (ManifoldModel.blowup(n) for n in (1, 0, 2, 4))
    disjoint = CurveConeSpec(model=four, flags=SpecFlags(disjoint_minus_ones=4))
    cases = [
        (IntClass.of(one, (2, 1)), None),
        (IntClass.of(zero, (2,)), None),
        (IntClass.of(two, (3, 1, 1)), None),
        *((four.H() * 2 - four.E(i), disjoint) for i in range(1, 5)),
    ]
    for e, spec in cases:
        check_dimension_bounds_for(e, spec, 6, census_degree, bounds, shapes, workers)
    props.extend([bounds.result, shapes.result])

    props.append(_merge("taubes_class", [check_taubes(k) for k in range(2, max_k + 1)]))
    props.append(check_standard_form(degree_bound=pairing_degree))
    props.append(_merge("del_pezzo", [check_del_pezzo(ManifoldModel.blowup(k), pairing_degree)
                                      for k in range(0, exceptional_k + 1)]))
    props.append(_merge("in_CK_oracle", oracle))
    props.append(check_runtime(timings))

    for p in props:
        execution_logger.info(f"{p.name}: {p.checked} checked, {p.failures} failed")
    params = {"max_k": max_k, "exceptional_k": exceptional_k, "samples": samples, "oracle_samples": oracle_samples,
              "classification_degree": classification_degree, "pairing_degree": pairing_degree,
              "census_degree": census_degree}
    return SuiteReport(suite="acceptance", seed=seed, parameters=params, properties=props,
                       timings={stage: round(seconds, 3) for stage, seconds in timings.items()})
