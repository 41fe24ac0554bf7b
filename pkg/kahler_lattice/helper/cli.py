import argparse
import sys
import time
from typing import Any, Optional, Sequence

from pydantic import BaseModel, ValidationError
from rich.console import Console

from kahler_lattice.common.config_handler import Config, ConfigHandler
from kahler_lattice.common.error import EXIT_SOFTWARE, EXIT_USAGE, Code, KahlerError
from kahler_lattice.common.logging_config import internal_logger
from kahler_lattice.cones.certificate import Certificate, ConeKind, Verdict, replay_certificate
from kahler_lattice.cones.decompose import decompose_SP, in_SK_plus
from kahler_lattice.cones.dual import dual_curve_cone
from kahler_lattice.cones.membership import in_CK, in_PK, in_positive_cone
from kahler_lattice.configs.census import check_dimension_bounds, classify_shape, enumerate_configurations
from kahler_lattice.configs.nef import NefVerdict, is_nef, taubes_class, vanishing_locus
from kahler_lattice.enumeration.classes import exceptional_classes, spherical_classes
from kahler_lattice.enumeration.tables import CacheProvenance, CacheStatus, ClassTable, SquareFilter, TableCache
from kahler_lattice.helper.io import read_class, read_classes, read_int_class, read_spec, read_taubes_inputs
from kahler_lattice.helper.report import EXIT_BOUNDARY, EXIT_IN, EXIT_OUT, RunReport, print_pretty
from kahler_lattice.helper.verify import SuiteReport, run_acceptance, run_lemmas
from kahler_lattice.helper.version import VERSION
from kahler_lattice.lattice.model import ManifoldModel, invariants
from kahler_lattice.weyl.classification import classify_normal_form
from kahler_lattice.weyl.reflection import cremona_reduce, is_equivalent

VERDICT_EXIT = {Verdict.IN: EXIT_IN, Verdict.OUT: EXIT_OUT, Verdict.BOUNDARY: EXIT_BOUNDARY}
NEF_EXIT = {NefVerdict.NEF: EXIT_IN, NefVerdict.NOT_NEF: EXIT_OUT, NefVerdict.UNKNOWN: EXIT_BOUNDARY}


class UsageErrorParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage status instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


class GlobalArgs(BaseModel):
    """Flags shared by every command."""
    model: Optional[str] = None
    json_output: bool = False
    pretty: bool = False
    seed: Optional[int] = None
    cache: Optional[str] = None
    bound: Optional[int] = None
    timing: bool = False
    log_level: Optional[str] = None


class RunContext:
    """Configuration, cache and output plumbing for one invocation."""

    def __init__(self, argv: Sequence[str], flags: GlobalArgs, handler: ConfigHandler):
        self.argv = list(argv)
        self.flags = flags
        self.config = handler.config
        self.started = time.perf_counter()
        cache_dir = handler.cache_path()
        self.cache = TableCache(cache_dir) if cache_dir else None
        self.provenance: Optional[CacheProvenance] = None

    @property
    def model(self) -> Optional[ManifoldModel]:
        return ManifoldModel.parse(self.flags.model) if self.flags.model else None

    def require_model(self, k: Optional[int] = None) -> ManifoldModel:
        if k is not None:
            return ManifoldModel.blowup(k)
        if self.model is None:
            raise KahlerError(Code.E0801, message="Give --k or --model")
        return self.model

    @property
    def bound(self) -> Optional[int]:
        """The explicit --bound; None lets searches derive their own."""
        return self.flags.bound

    @property
    def table_bound(self) -> int:
        return self.flags.bound if self.flags.bound is not None else self.config.degree_bound

    @property
    def seed(self) -> int:
        return self.flags.seed if self.flags.seed is not None else self.config.seed

    @property
    def workers(self) -> int:
        return self.config.workers

    def table(self, model: ManifoldModel, tag: str, bound_key: Optional[int], builder) -> ClassTable:
        if self.cache is None:
            self.provenance = CacheProvenance(status=CacheStatus.DISABLED)
            return builder()
        table, self.provenance = self.cache.get_or_build(model, tag, bound_key, builder)
        return table

    def emit(self, result: Any, model: Optional[ManifoldModel] = None,
             inputs: Optional[dict[str, Any]] = None) -> None:
        if isinstance(result, BaseModel):
            result = result.model_dump(mode="json", by_alias=True)
        report = RunReport(
            command=self.argv,
            model=str(model) if model is not None else None,
            inputs=inputs or {},
            result=result,
            cache=self.provenance,
            timing={"seconds": round(time.perf_counter() - self.started, 6)} if self.flags.timing else None,
        )
        if self.flags.pretty and not self.flags.json_output:
            print_pretty(report)
        else:
            print(report.to_json())


def _certificate(cert: Certificate) -> Certificate:
    if not replay_certificate(cert):
        raise KahlerError(Code.X0403, message=f"{cert.cone.value} certificate for {cert.query.label()} did not replay",
                          details=cert.model_dump(mode="json"))
    return cert


class Command:
    """
    Abstract base class for CLI commands.

    Subclasses must implement ``register`` and ``execute``; ``execute``
    returns the process exit status.
    """

    def register(self, subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]):
        raise NotImplementedError(
            "Subclasses must implement the `register` method.")

    def execute(self, args, ctx: RunContext) -> int:
        raise NotImplementedError(
            "Subclasses must implement the `execute` method.")


class InvariantsCommand(Command):
    def register(self, subparsers, parents):
        parser = subparsers.add_parser("invariants", parents=parents, help="Print g, iota, l, square and K.e of a class")
        parser.add_argument("cls", metavar="CLASS", help="Class JSON literal or file")
        parser.set_defaults(func=self.execute)

    def execute(self, args, ctx):
        e = read_int_class(args.cls, ctx.model)
        ctx.emit(invariants(e), e.model, {"class": list(e.coeffs)})
        return EXIT_IN


class ReduceCommand(Command):
    def register(self, subparsers, parents):
        parser = subparsers.add_parser("reduce", parents=parents, help="Cremona normal form and reduction word")
        parser.add_argument("cls", metavar="CLASS", help="Class JSON literal or file")
        parser.add_argument("--to", metavar="CLASS", help="Second class: report whether both share a normal form")
        parser.set_defaults(func=self.execute)

    def execute(self, args, ctx):
        e = read_int_class(args.cls, ctx.model)
        nf, word = cremona_reduce(e)
        if not word.replay():
            raise KahlerError(Code.X0202, details={"class": list(e.coeffs)})
        match = classify_normal_form(nf)
        result = {
            "normal_form": list(nf.coeffs),
            "label": nf.label(),
            "word": [r.model_dump(mode="json") for r in word.roots],
            "length": len(word),
            "classification": None if match is None else {"type": match[0].value, "n": match[1]},
        }
        inputs = {"class": list(e.coeffs)}
        if args.to is None:
            ctx.emit(result, e.model, inputs)
            return EXIT_IN
        other = read_int_class(args.to, e.model)
        equivalence = is_equivalent(e, other)
        if equivalence.equivalent and not equivalence.replay():
            raise KahlerError(Code.X0202, details={"class": list(e.coeffs), "to": list(other.coeffs)})
        result["equivalence"] = {
            "equivalent": equivalence.equivalent,
            "other_normal_form": list(equivalence.normal_forms[1].coeffs),
            "connecting_word": ([r.model_dump(mode="json") for r in equivalence.connecting_roots()]
                                if equivalence.equivalent else None),
        }
        inputs["to"] = list(other.coeffs)
        ctx.emit(result, e.model, inputs)
        return EXIT_IN if equivalence.equivalent else EXIT_OUT


class EnumCommand(Command):
    def register(self, subparsers, parents):
        parser = subparsers.add_parser("enum", parents=parents, help="Enumerate exceptional or spherical classes")
        parser.add_argument("kind", choices=["exceptional", "spherical"])
        parser.add_argument("--k", type=int, help="Number of blow-ups (default: --model)")
        parser.add_argument("--max-degree", type=int, help="Degree bound (default: --bound or the config)")
        parser.add_argument("--square", choices=[f.value for f in SquareFilter], default=SquareFilter.ANY.value)
        parser.set_defaults(func=self.execute)

    def execute(self, args, ctx):
        model = ctx.require_model(args.k)
        if args.kind == "exceptional":
            bound = None if model.is_blowup and model.k <= 8 else (args.max_degree or ctx.table_bound)
            table = ctx.table(model, "exceptional", bound, lambda: exceptional_classes(model, bound, ctx.workers))
        else:
            bound = args.max_degree or ctx.table_bound
            square_filter = SquareFilter(args.square)
            table = ctx.table(model, f"spherical:{square_filter.value}", bound,
                              lambda: spherical_classes(model, bound, square_filter, ctx.workers))
        result = table.to_document() | {"count": len(table)}
        ctx.emit(result, model, {"bound": bound})
        return EXIT_IN


class ConeCommand(Command):
    def register(self, subparsers, parents):
        parser = subparsers.add_parser("cone", help="Cone membership, decomposition and duals")
        actions = parser.add_subparsers(dest="action", required=True)
        check = actions.add_parser("check", parents=parents, help="Decide membership with a certificate")
        check.add_argument("cone", choices=[c.value for c in ConeKind])
        check.add_argument("cls", metavar="CLASS")
        check.add_argument("--method", choices=["auto", "table", "bounded"], default="auto")
        check.set_defaults(func=self.check)
        decompose = actions.add_parser("decompose", parents=parents, help="Write a class as a sum of positive spheres")
        decompose.add_argument("cls", metavar="CLASS")
        decompose.set_defaults(func=self.decompose)
        dual = actions.add_parser("dual", parents=parents, help="Dual of a curve cone")
        dual.add_argument("--generators", required=True, help="Generator list JSON or file")
        dual.add_argument("--no-clip", action="store_true", help="Skip the intersection with the positive cone")
        dual.set_defaults(func=self.dual)

    def check(self, args, ctx):
        e = read_class(args.cls, ctx.model)
        cone = ConeKind(args.cone)
        if cone is ConeKind.P:
            cert = in_positive_cone(e)
        elif cone is ConeKind.CK:
            cert = in_CK(e, degree_bound=ctx.bound, method=args.method, workers=ctx.workers)
        elif cone is ConeKind.PK:
            cert = in_PK(e, degree_bound=ctx.bound, method=args.method, workers=ctx.workers)
        else:
            cert = in_SK_plus(e, degree_bound=ctx.bound, workers=ctx.workers)
        cert = _certificate(cert)
        ctx.emit(cert, e.model, {"class": cert.query.model_dump(mode="json")["coeffs"]})
        return VERDICT_EXIT[cert.verdict]

    def decompose(self, args, ctx):
        e = read_class(args.cls, ctx.model)
        cert = _certificate(decompose_SP(e, degree_bound=ctx.bound, workers=ctx.workers))
        ctx.emit(cert, e.model, {"class": cert.query.model_dump(mode="json")["coeffs"]})
        return VERDICT_EXIT[cert.verdict]

    def dual(self, args, ctx):
        gens = read_classes(args.generators, ctx.model)
        cone = dual_curve_cone(gens, clip=not args.no_clip)
        result = cone.model_dump(mode="json") | {"labels": cone.labels()}
        ctx.emit(result, cone.model, {"generators": [list(g.coeffs) for g in gens]})
        return EXIT_IN


class NefCommand(Command):
    def register(self, subparsers, parents):
        parser = subparsers.add_parser("nef", help="Nef test against a curve-cone spec")
        actions = parser.add_subparsers(dest="action", required=True)
        check = actions.add_parser("check", parents=parents, help="Nef, NotNef or Unknown")
        check.add_argument("cls", metavar="CLASS")
        check.add_argument("--spec", help="Spec JSON or file (default: the top stratum)")
        check.set_defaults(func=self.execute)

    def execute(self, args, ctx):
        e = read_int_class(args.cls, ctx.model)
        spec = read_spec(args.spec, e.model, ctx.table_bound)
        result = is_nef(e, spec)
        ctx.emit(result, e.model, {"class": list(e.coeffs)})
        return NEF_EXIT[result.verdict]


class LocusCommand(Command):
    def register(self, subparsers, parents):
        parser = subparsers.add_parser("locus", parents=parents, help="Vanishing locus of a big nef class")
        parser.add_argument("cls", metavar="CLASS")
        parser.add_argument("--spec", help="Spec JSON or file (default: the top stratum)")
        parser.set_defaults(func=self.execute)

    def execute(self, args, ctx):
        e = read_int_class(args.cls, ctx.model)
        spec = read_spec(args.spec, e.model, ctx.table_bound)
        locus = vanishing_locus(e, spec)
        result = {"locus": [list(c.coeffs) for c in locus], "labels": [c.label() for c in locus],
                  "ample": not locus}
        ctx.emit(result, e.model, {"class": list(e.coeffs)})
        return EXIT_IN


class TaubesClassCommand(Command):
    def register(self, subparsers, parents):
        parser = subparsers.add_parser("taubes-class", parents=parents,
                                       help="Sum of big nef classes with disjoint vanishing loci")
        parser.add_argument("--inputs", required=True, help="JSON list of {class, spec, weight}")
        parser.set_defaults(func=self.execute)

    def execute(self, args, ctx):
        items = read_taubes_inputs(args.inputs, ctx.model, ctx.table_bound)
        result = taubes_class([(e, spec) for e, spec, _ in items], [w for _, _, w in items])
        ctx.emit(result, items[0][0].model, {"count": len(items)})
        return EXIT_IN if result.ok else EXIT_OUT


class ConfigCommand(Command):
    def register(self, subparsers, parents):
        parser = subparsers.add_parser("config", help="Reducible configurations of a spherical class")
        actions = parser.add_subparsers(dest="action", required=True)
        for name, helptext in (("enum", "List configurations"), ("audit", "Dimension bounds and shapes")):
            sub = actions.add_parser(name, parents=parents, help=helptext)
            sub.add_argument("cls", metavar="CLASS")
            sub.add_argument("--spec", help="Spec JSON or file (default: the top stratum)")
            sub.add_argument("--max-parts", type=int, default=6)
            sub.add_argument("--max-degree", type=int, default=8)
            sub.set_defaults(func=self.execute, audit=name == "audit")

    def execute(self, args, ctx):
        e = read_int_class(args.cls, ctx.model)
        spec = read_spec(args.spec, e.model, args.max_degree)
        census = enumerate_configurations(e, spec, args.max_parts, args.max_degree, ctx.workers)
        inputs = {"class": list(e.coeffs), "max_parts": args.max_parts, "max_degree": args.max_degree}
        if not args.audit:
            ctx.emit(census, e.model, inputs)
            return EXIT_IN
        rows, violations = [], 0
        for config in census.configurations:
            report = check_dimension_bounds(config)
            shape = None if report.skipped else classify_shape(config).value
            violations += 0 if report.holds else 1
            rows.append({"parts": config.labels(), "bounds": report.model_dump(mode="json"), "shape": shape})
        result = {"total": e.label(), "truncated": census.truncated, "configurations": rows,
                  "violations": violations}
        ctx.emit(result, e.model, inputs)
        return EXIT_IN if violations == 0 else EXIT_OUT


class VerifyCommand(Command):
    def register(self, subparsers, parents):
        parser = subparsers.add_parser("verify", help="Run a property suite")
        actions = parser.add_subparsers(dest="suite", required=True)
        lemmas = actions.add_parser("lemmas", parents=parents, help="Lattice lemmas on one model")
        lemmas.add_argument("--k", type=int, required=True)
        lemmas.add_argument("--max-degree", type=int, default=6)
        lemmas.add_argument("--samples", type=int, default=40)
        lemmas.set_defaults(func=self.execute)
        acceptance = actions.add_parser("acceptance", parents=parents, help="The full acceptance table")
        acceptance.add_argument("--max-k", type=int, default=6)
        acceptance.add_argument("--samples", type=int, default=100)
        acceptance.add_argument("--oracle-samples", type=int, default=500)
        acceptance.set_defaults(func=self.execute)

    def execute(self, args, ctx):
        report: SuiteReport
        if args.suite == "lemmas":
            report = run_lemmas(args.k, args.max_degree, ctx.seed, args.samples, ctx.cache, ctx.workers)
        else:
            report = run_acceptance(ctx.seed, max_k=args.max_k, samples=args.samples,
                                    oracle_samples=args.oracle_samples, cache=ctx.cache, workers=ctx.workers)
        ctx.emit(report, None, report.parameters | {"seed": ctx.seed})
        return EXIT_IN if report.passed else EXIT_OUT


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--model", help="Model: blowup:K or s2xs2", **default)
    parser.add_argument("--json", dest="json_output", action="store_true", help="JSON output (the default)", **default)
    parser.add_argument("--pretty", action="store_true", help="Human-readable table output", **default)
    parser.add_argument("--seed", type=int, help="Seed for randomized suites", **default)
    parser.add_argument("--cache", help="Table cache directory (default: $KAHLER_CACHE_DIR)", **default)
    parser.add_argument("--bound", type=int, help="Degree bound for searches", **default)
    parser.add_argument("--timing", action="store_true", help="Add wall-clock timing to the report", **default)
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], **default)


def build_parser() -> argparse.ArgumentParser:
    parser = UsageErrorParser(prog="kahler", description="Exact lattice and cone computations on rational 4-manifolds")
    parser.add_argument("--version", action="version", version=f"kahler-lattice {VERSION}",
                        help="Print the current version")
    _global_flags(parser, suppress=False)
    shared = UsageErrorParser(add_help=False)
    _global_flags(shared, suppress=True)
    subparsers = parser.add_subparsers(dest="command")
    commands = [
        InvariantsCommand(),
        ReduceCommand(),
        EnumCommand(),
        ConeCommand(),
        NefCommand(),
        LocusCommand(),
        TaubesClassCommand(),
        ConfigCommand(),
        VerifyCommand(),
    ]
    for cmd in commands:
        cmd.register(subparsers, [shared])
    return parser


def _context(args: argparse.Namespace, argv: Sequence[str]) -> RunContext:
    flags = GlobalArgs(**{name: getattr(args, name) for name in GlobalArgs.model_fields})
    overrides: dict[str, Any] = {}
    if flags.log_level:
        overrides["log_level"] = flags.log_level
    if flags.cache:
        overrides["cache_dir"] = flags.cache
    if flags.bound is not None:
        overrides["degree_bound"] = flags.bound
    if flags.seed is not None:
        overrides["seed"] = flags.seed
    try:
        explicit = Config(**overrides)
    except ValidationError as e:
        raise KahlerError(Code.E0702, details=str(e), cause=e) from e
    handler = ConfigHandler(explicit)
    config = handler.load()
    if config.pretty and not flags.json_output:
        flags.pretty = True
    return RunContext(argv, flags, handler)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point for the kahler CLI.

    Returns 0/1/2 for In/Out/Boundary style verdicts, 64 for usage errors
    and the error's own status for data and internal errors.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        ctx = _context(args, argv)
        return args.func(args, ctx)
    except KahlerError as e:
        e.log(use_rich=False)
        print(RunReport(command=argv, result={"error": e.to_payload(include_status=True)}).to_json())
        return e.status_code
    except KeyboardInterrupt:
        print("Operation cancelled by user.", file=sys.stderr)
        return 130
    except Exception as e:  # pylint: disable=broad-except
        internal_logger.exception("Unexpected error")
        error = KahlerError(Code.X0803, details=str(e), cause=e)
        print(RunReport(command=argv, result={"error": error.to_payload(include_status=True)}).to_json())
        Console(stderr=True).print(f"[red]Unexpected error: {e}[/red]")
        return EXIT_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
