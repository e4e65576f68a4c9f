"""nsemiprimary command line.

Subcommands:
  classify   -> flags, delta and n-semiprimary verdict for an ideal of a finite ring
  delta      -> delta of (m) in Z, (f) in F_p[t] or an ideal of a finite ring
  delta-bar  -> n-powerful semiprimary profile of an ideal of a series ring
  audit      -> quantified self-checks over the seeded corpus
  search     -> certificate and bounded witness search for a monomial ideal
  table      -> valuation domain family table or a single descriptor
  colon      -> (I : I) of a series ideal
  closure    -> integral closure and root ideal of a series ring
  check      -> one bounded property check on a series ring

Exit codes: 0 ok, 2 audit refutation, 3 budget or precision (and partial
verdicts under --strict), 64 usage, 1 internal.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any

from .audit import check_registry, run_audit
from .catalog import corpus_generate, exported_names, series_fixture
from .classify import classify_ideal, classify_ring, delta, format_n
from .concurrency import default_concurrency
from .config import PROFILES, SeriesBounds, SuiteConfig
from .errors import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, ParseError
from .monomial import MonomialIdeal, certify_n_semiprimary, mono_counterexample_search
from .pid import PidIdeal, finite_delta, pid_delta
from .runtime import execute_command, prepare_config
from .schemas import validate_document
from .series import colon_ring, integral_closure
from .series_checks import (
    PARTIAL,
    PROPERTY_NAMES,
    bounded_check,
    delta_bar_profile,
    make_property,
    root_ideal,
)
from .specs import SeriesFixture, load_series, parse_ideal, parse_ring, read_json
from .ux import print_check_status, print_header, print_lines, print_summary_box
from .valuation import (
    GROUP_TAGS,
    parse_descriptor,
    vd_delta,
    vd_example_table,
    vd_is_n_semiprimary,
    vd_sqrt,
)

_MAX_HELP_WIDTH = 100


class _HelpFormatter(argparse.HelpFormatter):
    def __init__(self, prog: str) -> None:
        super().__init__(prog, max_help_position=30, width=_MAX_HELP_WIDTH)


class _FormatterArgumentParser(argparse.ArgumentParser):
    """argparse with wider help and exit code 64 for usage errors."""

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        kwargs.setdefault("formatter_class", _HelpFormatter)
        super().__init__(*args, **kwargs)

    def error(self, message: str) -> Any:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _add_bounds(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--order-bound", type=_positive, help="Largest element order searched")
    parser.add_argument("--degree-bound", type=_positive, help="Unit-part length searched")


def _build_parser() -> argparse.ArgumentParser:
    p = _FormatterArgumentParser(
        prog="nsemiprimary", description="n-semiprimary ideals: classification and audit"
    )
    p.add_argument("--json", action="store_true", help="Emit machine-readable JSON on stdout")
    p.add_argument("--threads", type=int, help="Worker threads (env: THREADS)")
    p.add_argument("--config", help="YAML configuration (default: nsemiprimary.config.yaml)")
    p.add_argument("--log-json", action="store_true", help="Structured JSON logs on stderr")
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    p.add_argument("--no-color", action="store_true", help="Plain text output")
    sub = p.add_subparsers(
        dest="cmd", required=True, parser_class=_FormatterArgumentParser, metavar="<command>"
    )

    pc = sub.add_parser("classify", help="Classify an ideal of a finite ring")
    pc.add_argument("--ring", required=True, help="zn:N, A*B, poly:p:caps[:rels], R(+)d or file")
    pc.add_argument("--ideal", help="gen:a,b | zero | nil (omit for ring facts)")
    pc.add_argument("--n", type=_positive, help="Also decide n-semiprimary for this n")

    pd = sub.add_parser("delta", help="Least n making an ideal n-semiprimary")
    src = pd.add_mutually_exclusive_group(required=True)
    src.add_argument("--int", type=int, dest="integer", help="Generator m of (m) in Z")
    src.add_argument("--poly", help="Generator f of (f) in F_p[t]")
    src.add_argument("--ring", help="Finite ring spec (needs --ideal)")
    pd.add_argument("--p", type=int, help="Characteristic for --poly")
    pd.add_argument("--ideal", help="Ideal for --ring")
    pd.add_argument(
        "--finite", action="store_true", help="With --int, also compute delta inside Z_(m^2)"
    )

    pb = sub.add_parser("delta-bar", help="n-powerful semiprimary profile of a series ideal")
    pb.add_argument("--spec", required=True, help="Series fixture file or fixture name")
    pb.add_argument("--ideal", help="Ideal name in the fixture (default: M)")
    pb.add_argument("--nmax", type=_positive, required=True)
    pb.add_argument("--strict", action="store_true", help="Exit 3 on partial verdicts")
    _add_bounds(pb)

    pa = sub.add_parser("audit", help="Run the quantified self-checks")
    pa.add_argument("--profile", choices=PROFILES)
    pa.add_argument(
        "--check", action="append", dest="checks", metavar="ID",
        help="Check id, alias or location ref such as Thm3.9 (repeatable)",
    )
    pa.add_argument("--strict", action="store_true", help="Exit 3 when skips are present")
    pa.add_argument("--timing", action="store_true", help="Include per-check timing")
    pa.add_argument("--seed", type=int)
    pa.add_argument("--list", action="store_true", help="List check ids and exit")
    pa.add_argument("--output", help="Also write the JSON report to this file")

    ps = sub.add_parser("search", help="Monomial ideal certificate and witness search")
    ps.add_argument("--p", type=int, required=True)
    ps.add_argument("--ideal", required=True, help='Generators, e.g. "X^2, Y^2"')
    ps.add_argument("--n", type=_positive, required=True)
    ps.add_argument("--degree", type=int, default=2)
    ps.add_argument("--terms", type=_positive, default=2)

    pt = sub.add_parser("table", help="Valuation domain ideals")
    which = pt.add_mutually_exclusive_group(required=True)
    which.add_argument("--group", choices=GROUP_TAGS)
    which.add_argument("--descriptor", help='e.g. "Z+Q cut=1/2,0 strict"')
    pt.add_argument("--n", type=_positive, default=1)

    pcol = sub.add_parser("colon", help="Colon ring (I : I)")
    pcol.add_argument("--spec", required=True)
    pcol.add_argument("--ideal")

    pcl = sub.add_parser("closure", help="Integral closure and root ideal")
    pcl.add_argument("--spec", required=True)
    pcl.add_argument("--n", type=_positive)
    _add_bounds(pcl)

    pk = sub.add_parser("check", help="Bounded property check on a series ring")
    pk.add_argument("--spec", required=True)
    pk.add_argument("--property", required=True, choices=PROPERTY_NAMES)
    pk.add_argument("--n", type=_positive, default=1)
    pk.add_argument("--ideal")
    pk.add_argument("--super", dest="super_spec", help="Larger ring for n-root-extension")
    pk.add_argument("--strict", action="store_true", help="Exit 3 on a partial verdict")
    _add_bounds(pk)
    return p


# --- output ------------------------------------------------------------------


def _emit(args: argparse.Namespace, data: Any, lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        print_lines(lines)


def _series(text: str) -> SeriesFixture:
    """A fixture file path, or the name of a built-in series fixture."""
    path = Path(text)
    if path.exists():
        errors = validate_document("series_spec", read_json(path))
        if errors:
            raise ParseError(f"{path}: {errors[0]}")
        return load_series(path)
    if text in exported_names():
        return series_fixture(text)
    raise ParseError(f"no such spec file or fixture: {text}")


def _bounds(cfg: SuiteConfig, args: argparse.Namespace) -> SeriesBounds:
    bounds = cfg.series
    if getattr(args, "order_bound", None):
        bounds = replace(bounds, order_bound=args.order_bound)
    if getattr(args, "degree_bound", None):
        bounds = replace(bounds, degree_bound=args.degree_bound)
    return bounds


# --- handlers ----------------------------------------------------------------


def _cmd_classify(cfg: SuiteConfig, args: argparse.Namespace) -> int:
    ring = parse_ring(args.ring, cfg.budgets)
    if args.ideal is None:
        facts = classify_ring(ring)
        if args.json:
            _emit(args, facts.to_dict(), [])
        else:
            print_summary_box(
                facts.name,
                [(k, "yes" if v is True else "no" if v is False else v)
                 for k, v in facts.to_dict().items() if k != "name"],
            )
        return EXIT_OK
    ideal = parse_ideal(ring, args.ideal)
    report = classify_ideal(ring, ideal, cfg.budgets, args.n, default_concurrency())
    _emit(args, report.to_dict(), report.lines())
    return EXIT_OK


def _cmd_delta(cfg: SuiteConfig, args: argparse.Namespace) -> int:
    if args.integer is not None:
        result = pid_delta(PidIdeal.integer(args.integer), cfg.budgets)
        data = result.to_dict()
        lines = [f"{result.ideal}: delta {format_n(result.delta)} ({result.factorization})"]
        if args.finite:
            finite = finite_delta(abs(args.integer), cfg.budgets)
            data["finite_delta"] = "inf" if finite is None else finite
            lines.append(f"inside Z_{args.integer ** 2}: delta {format_n(finite)}")
        _emit(args, data, lines)
        return EXIT_OK
    if args.poly is not None:
        if args.p is None:
            raise ValueError("--poly needs --p")
        result = pid_delta(PidIdeal.polynomial(args.poly, args.p), cfg.budgets)
        _emit(
            args,
            result.to_dict(),
            [f"{result.ideal}: delta {format_n(result.delta)} ({result.factorization})"],
        )
        return EXIT_OK
    if args.ideal is None:
        raise ValueError("--ring needs --ideal")
    ring = parse_ring(args.ring, cfg.budgets)
    ideal = parse_ideal(ring, args.ideal)
    res = delta(ring, ideal, cfg.budgets, default_concurrency())
    data = {"ring": ring.name, "ideal": ideal.describe(), **res.to_dict()}
    _emit(args, data, [f"{ideal.describe()} in {ring.name}: delta {format_n(res.delta)}"])
    return EXIT_OK


def _cmd_delta_bar(cfg: SuiteConfig, args: argparse.Namespace) -> int:
    fixture = _series(args.spec)
    ideal = fixture.ideal(args.ideal)
    profile = delta_bar_profile(
        ideal, args.nmax, _bounds(cfg, args), cfg.budgets, default_concurrency()
    )
    lines = [f"{fixture.name}: {ideal.label()} = {ideal.describe()}"]
    lines += [f"  {v.line()}" for v in profile.per_n.values()]
    lines.append(f"refuted at: {profile.refuted_at()}")
    lines.append(f"delta-bar at bound: {format_n(profile.delta_bar)}")
    _emit(args, {"spec": fixture.name, **profile.to_dict()}, lines)
    partial = any(v.kind == PARTIAL for v in profile.per_n.values())
    return EXIT_BUDGET if partial and args.strict else EXIT_OK


def _timing_items(timing: dict[str, Any]) -> list[tuple[str, str | int]]:
    if not timing:
        return []
    return [
        ("total ms", f"{timing['total_duration_ms']:.0f}"),
        ("median ms", f"{timing['median_ms']:.0f}"),
        ("slowest", timing["slowest"].removeprefix("audit.")),
    ]


def _cmd_audit(cfg: SuiteConfig, args: argparse.Namespace) -> int:
    if args.list:
        registry = check_registry()
        data = [c.describe() for c in registry.values()]
        _emit(args, data, [f"{c.id} ({c.ref}) [{c.scope}] {c.statement}" for c in registry.values()])
        return EXIT_OK
    corpus = corpus_generate(cfg.audit.profile, cfg.audit.seed)
    report = run_audit(
        corpus,
        args.checks,
        cfg,
        concurrency=default_concurrency(),
        track_memory=args.timing,
    )
    data = report.to_dict(timing=args.timing)
    if args.output:
        Path(args.output).write_text(
            json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
    if args.json:
        _emit(args, data, [])
    else:
        print_header(f"Audit ({corpus.profile}, seed {corpus.seed})")
        for result in report.results:
            t = result.tally
            details = f"{t.passes}/{t.tried}"
            if t.skips:
                details += f", {len(t.skips)} skipped"
            if args.timing:
                details += f", {result.duration_ms:.0f} ms"
            print_check_status(result.check.id, result.status, details)
            for ref in t.refutations[:3]:
                print(f"    refuted on {ref['instance']}")
        summary = data["summary"]
        print_summary_box(
            "Summary",
            [
                ("checks", summary["checks"]),
                ("instances", summary["tried"]),
                ("rings", corpus.manifest()["rings"]),
                ("refutations", summary["refutations"]),
                ("skips", summary["skips"]),
                *_timing_items(report.timing if args.timing else {}),
            ],
        )
    return report.exit_code()


def _cmd_search(cfg: SuiteConfig, args: argparse.Namespace) -> int:
    ideal = MonomialIdeal.parse(args.p, args.ideal)
    cert = certify_n_semiprimary(ideal, args.n)
    result = mono_counterexample_search(
        ideal, args.n, args.degree, args.terms, cfg.budgets, default_concurrency()
    )
    lines = [
        f"ideal: {ideal.describe()} over F{ideal.p}",
        f"certificate: {cert.kind} ({cert.reason})",
    ]
    if result.found and result.witness:
        f, g = result.witness
        lines.append(f"witness: f = {f}, g = {g}")
    else:
        lines.append(
            f"no witness with degree <= {args.degree} and <= {args.terms} terms "
            f"({result.candidates} candidates)"
        )
    _emit(
        args,
        {"ideal": ideal.describe(), "p": ideal.p, "n": args.n,
         "certificate": cert.to_dict(), "search": result.to_dict()},
        lines,
    )
    return EXIT_OK


def _cmd_table(cfg: SuiteConfig, args: argparse.Namespace) -> int:
    if args.group:
        table = vd_example_table(args.group, cfg.series.max_n)
        lines = [f"value group {table.group}"]
        for row in table.rows:
            lines.append(
                f"  {row.family}: n-semiprimary {row.semiprimary_label}; "
                f"n-powerful semiprimary {row.powerful_label}"
            )
            for name, n in row.samples:
                lines.append(f"      {name}: least n {format_n(n)}")
        lines.append(table.summary)
        _emit(args, table.to_dict(), lines)
        return EXIT_OK
    desc = parse_descriptor(args.descriptor)
    holds = vd_is_n_semiprimary(desc, args.n)
    least = vd_delta(desc, cfg.series.max_n)
    rad = vd_sqrt(desc)
    data = {
        "ideal": desc.to_dict(),
        "radical": rad.to_dict(),
        "n": args.n,
        "n_semiprimary": holds,
        "delta": "inf" if least is None else least,
    }
    _emit(
        args,
        data,
        [
            f"ideal: {desc.describe()}",
            f"radical: {rad.describe()}",
            f"{args.n}-semiprimary: {'yes' if holds else 'no'}; delta: {format_n(least)}",
        ],
    )
    return EXIT_OK


def _cmd_colon(cfg: SuiteConfig, args: argparse.Namespace) -> int:
    fixture = _series(args.spec)
    ideal = fixture.ideal(args.ideal)
    ring = colon_ring(ideal)
    _emit(
        args,
        {"spec": fixture.name, "ideal": ideal.describe(), "colon": ring.to_dict(),
         "colon_text": ring.describe()},
        [f"({ideal.label()} : {ideal.label()}) = {ring.describe()}"],
    )
    return EXIT_OK


def _cmd_closure(cfg: SuiteConfig, args: argparse.Namespace) -> int:
    fixture = _series(args.spec)
    result = integral_closure(fixture.ring)
    data: dict[str, Any] = {"spec": fixture.name, **result.to_dict()}
    lines = [
        f"integral closure of {fixture.ring.describe()}: {result.closure.describe()}",
        f"maximal ideal: {result.maximal.describe()}; residue field {result.residue_field}",
    ]
    if args.n is not None:
        roots = root_ideal(fixture.ring, args.n, _bounds(cfg, args))
        data["root_ideal"] = roots.to_dict()
        text = "not an order ideal" if roots.ideal is None else roots.ideal.describe()
        lines.append(
            f"{{x : x^{args.n} in M}} at bound: {text}; "
            f"equals the closure's maximal ideal: {'yes' if roots.equals_radical else 'no'}"
        )
    _emit(args, data, lines)
    return EXIT_OK


def _cmd_check(cfg: SuiteConfig, args: argparse.Namespace) -> int:
    fixture = _series(args.spec)
    ideal = fixture.ideal(args.ideal) if args.ideal else None
    other = _series(args.super_spec).ring if args.super_spec else None
    prop = make_property(args.property, fixture.ring, args.n, ideal, other)
    verdict = bounded_check(prop, _bounds(cfg, args), cfg.budgets, default_concurrency())
    _emit(args, verdict.to_dict(), [verdict.subject, verdict.line()])
    return EXIT_BUDGET if verdict.kind == PARTIAL and args.strict else EXIT_OK


def _build_handlers(args: argparse.Namespace, cfg: SuiteConfig) -> dict[str, Any]:
    return {
        "classify": lambda: _cmd_classify(cfg, args),
        "delta": lambda: _cmd_delta(cfg, args),
        "delta-bar": lambda: _cmd_delta_bar(cfg, args),
        "audit": lambda: _cmd_audit(cfg, args),
        "search": lambda: _cmd_search(cfg, args),
        "table": lambda: _cmd_table(cfg, args),
        "colon": lambda: _cmd_colon(cfg, args),
        "closure": lambda: _cmd_closure(cfg, args),
        "check": lambda: _cmd_check(cfg, args),
    }


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = prepare_config(args)
    except Exception as exc:
        return execute_command(lambda: _raise(exc), args, "config")
    handler = _build_handlers(args, cfg).get(args.cmd)
    if handler is None:  # pragma: no cover - argparse enforces valid choices
        parser.print_help()
        return EXIT_USAGE
    return execute_command(handler, args, args.cmd)


def _raise(exc: BaseException) -> int:
    raise exc


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
