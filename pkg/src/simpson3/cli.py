"""Command-line entry point.

Subcommands expose classification, the catalog, orbit classes, the
parity obstruction, witness search and the Monte Carlo estimators, all
with machine-readable output.  Exit codes: 0 success, 1 parse or domain
error, 2 degenerate input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import CatalogError, DegenerateTable, DomainError
from .experiments import (
    SamplerConfig,
    Witness,
    WitnessArchive,
    estimate_2d_reversal,
    estimate_3d_conversion,
    search_witness,
)
from .feasibility import obstruction, obstruction_triple, write_feasibility_report
from .symmetry import orbit_classes
from .tables import (
    NonnegTable3,
    Table2,
    Table3,
    classify_2d,
    correlation_profile,
    eval_form_signs,
    format_rational,
    load_table,
    parse_rational,
)
from .triangulation import (
    DEFAULT_TOLERANCE,
    catalog_to_json_obj,
    classify_exact,
    get_catalog,
)

EXIT_OK = 0
EXIT_USER_ERROR = 1
EXIT_DEGENERATE = 2

WORKERS_ENV = "SIMPSON3_WORKERS"


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with the domain-error code."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USER_ERROR, f"{self.prog}: error: {message}\n")


def _default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise DomainError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
        if value < 1:
            raise DomainError(f"{WORKERS_ENV} must be positive, got {value}")
        return value
    return os.cpu_count() or 1


def _sampler_config(args: argparse.Namespace) -> SamplerConfig:
    workers = args.workers if args.workers is not None else _default_workers()
    return SamplerConfig(seed=args.seed, worker_count=workers, tolerance=args.tolerance)


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _emit(payload: dict | list, args: argparse.Namespace, summary: str | None = None) -> None:
    if args.format == "text" and summary is not None:
        _write_output(summary, args.out)
    elif args.format == "json":
        _write_output(json.dumps(payload, indent=2), args.out)
    else:
        raise DomainError(f"format {args.format!r} is not supported by this command")


def _classification_report(table: Table3) -> dict:
    tri = classify_exact(table)
    profile = correlation_profile(table)
    return {
        "canonicalId": tri.canonical_id,
        "tetrahedra": [list(t.vertices) for t in tri.tetrahedra],
        "constraints": {letter: sign for letter, sign in sorted(tri.constraints)},
        "formSigns": eval_form_signs(table).as_dict(),
        "features": {
            "faceDiagonals": [list(d) for d in tri.face_diagonals],
            "fullVertices": list(tri.full_vertices),
            "emptyVertices": list(tri.empty_vertices),
            "hasHyperdiagonal": tri.has_hyperdiagonal,
            "typeClass": tri.type_class,
            "orbitRepresentative": tri.orbit_rep,
        },
        "correlationProfile": profile.as_dict(),
    }


def cmd_classify(args: argparse.Namespace) -> int:
    table = load_table(args.table, allow_zero=args.smoothing is not None)
    report: dict = {"input": args.table}
    if isinstance(table, NonnegTable3):
        eps = parse_rational(args.smoothing)
        table = table.smoothed(eps)
        report["smoothing"] = format_rational(eps)
    if isinstance(table, Table2):
        verdict = classify_2d(table)
        report["kind"] = "2x2"
        report["diagonal"] = verdict.value
        summary = f"2x2 table: {verdict.value}"
    elif isinstance(table, Table3):
        report["kind"] = "2x2x2"
        report.update(_classification_report(table))
        summary = (
            f"triangulation {report['canonicalId']}"
            f" (type {report['features']['typeClass']},"
            f" {len(report['tetrahedra'])} tetrahedra)"
        )
    else:
        raise DomainError("unsupported table shape")
    _emit(report, args, summary)
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    catalog = get_catalog()
    payload = catalog_to_json_obj(catalog)
    summary = f"{len(catalog.entries)} triangulations"
    _emit(payload, args, summary)
    return EXIT_OK


def cmd_orbits(args: argparse.Namespace) -> int:
    catalog = get_catalog()
    classes = orbit_classes(args.arity, catalog)
    payload = [
        {
            "representative": list(cls.representative),
            "size": cls.size,
            "members": [list(m) for m in cls.members],
        }
        for cls in classes
    ]
    _emit(payload, args, f"{len(classes)} classes")
    return EXIT_OK


def cmd_feasibility(args: argparse.Namespace) -> int:
    catalog = get_catalog()
    if args.pair is not None:
        a, b = args.pair
        verdict = obstruction(catalog[a], catalog[b])
        payload = {
            "pair": [a, b],
            "obstructed": verdict.obstructed,
            "obstructingVertex": verdict.witness_vertex,
        }
        if verdict.obstructed:
            summary = f"obstructed at vertex {verdict.witness_vertex}"
        else:
            summary = "not obstructed"
        _emit(payload, args, summary)
        return EXIT_OK
    if args.triple is not None:
        a, b, c = args.triple
        verdict = obstruction_triple(catalog[a], catalog[b], catalog[c])
        payload = {
            "triple": [a, b, c],
            "obstructed": verdict.obstructed,
            "obstructingVertex": verdict.witness_vertex,
        }
        if verdict.obstructed:
            summary = f"obstructed at vertex {verdict.witness_vertex}"
        else:
            summary = "not obstructed"
        _emit(payload, args, summary)
        return EXIT_OK
    pair_classes = orbit_classes(2, catalog) if args.arity in (None, 2) else ()
    triple_classes = orbit_classes(3, catalog) if args.arity in (None, 3) else ()
    if args.out is None:
        raise DomainError("the feasibility report requires --out PATH")
    write_feasibility_report(args.out, catalog, pair_classes, triple_classes)
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    if (args.pair is None) == (args.triple is None):
        raise DomainError("search requires exactly one of --pair or --triple")
    key = tuple(args.pair) if args.pair is not None else tuple(args.triple)
    config = _sampler_config(args)
    result = search_witness(key, config, budget=args.budget)
    if isinstance(result, Witness):
        if args.out is not None:
            WitnessArchive(args.out, result.arity).append([result])
        payload = {
            "status": "witness",
            "classKey": list(result.class_key),
            "f": [format_rational(x) for x in result.f.entries],
            "g": [format_rational(x) for x in result.g.entries],
            "verifiedAt": result.verified_at,
        }
        summary = f"witness found for class {result.class_key}"
    else:
        payload = {
            "status": "exhausted",
            "classKey": list(result.class_key),
            "attempts": result.attempts,
        }
        summary = f"budget exhausted for class {result.class_key} after {result.attempts} attempts"
    if args.format == "text":
        sys.stdout.write(summary + "\n")
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_montecarlo(args: argparse.Namespace) -> int:
    config = _sampler_config(args)
    if args.dim == 2:
        estimate = estimate_2d_reversal(config, args.samples)
    else:
        estimate = estimate_3d_conversion(config, args.samples)
    payload = estimate.to_json_obj()
    lines = [
        f"{key}: {estimate.estimates[key]:.6f} (se {estimate.standard_errors[key]:.6f},"
        f" target {estimate.targets[key]})"
        for key in sorted(estimate.counts)
    ]
    lines.append(f"discarded {estimate.degenerate_discards} of {estimate.sample_count}")
    _emit(payload, args, "\n".join(lines))
    return EXIT_OK


def cmd_reversal(args: argparse.Namespace) -> int:
    args.dim = 2
    return cmd_montecarlo(args)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--out", default=None, help="write output to this path")


def _add_sampling(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=10**6)
    parser.add_argument("--budget", type=int, default=10**7)
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"worker count (default: {WORKERS_ENV} or available parallelism)",
    )
    parser.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simpson3", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "classify", parents=[], help="classify a table file by its induced triangulation"
    )
    p.add_argument("table", help="path to a table JSON file")
    p.add_argument(
        "--smoothing",
        default=None,
        metavar="EPS",
        help="allow zero entries and add this rational to every cell first",
    )
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("catalog", help="emit the 74-entry triangulation catalog")
    _add_common(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("orbits", help="orbit classes of ids, pairs or triples")
    p.add_argument("--arity", type=int, choices=(1, 2, 3), required=True)
    _add_common(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("feasibility", help="parity obstruction verdicts and reports")
    p.add_argument("--pair", nargs=2, type=int, metavar=("A", "B"))
    p.add_argument("--triple", nargs=3, type=int, metavar=("A", "B", "C"))
    p.add_argument("--arity", type=int, choices=(2, 3), default=None)
    _add_common(p)
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("search", help="search an exact witness for a class key")
    p.add_argument("--pair", nargs=2, type=int, metavar=("A", "B"))
    p.add_argument("--triple", nargs=3, type=int, metavar=("A", "B", "C"))
    _add_sampling(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", default=None, help="append the witness to this CSV archive")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("montecarlo", help="frequency estimates from random tables")
    p.add_argument("--dim", type=int, choices=(2, 3), default=3)
    _add_sampling(p)
    _add_common(p)
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("reversal", help="2x2 association reversal frequency")
    _add_sampling(p)
    _add_common(p)
    p.set_defaults(func=cmd_reversal)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateTable as exc:
        sys.stderr.write(f"degenerate: {exc}\n")
        return EXIT_DEGENERATE
    except (DomainError, CatalogError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USER_ERROR


if __name__ == "__main__":
    sys.exit(main())
