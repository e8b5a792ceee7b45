"""Command-line surface: enumeration, mapping, sets, verification, series.

Output is deterministic: fixed column and row order, no timestamps.
Exit codes: 0 success, 1 a requested verification failed, 2 usage
error, 3 an operation was applied outside its contract (for example
forcing the wrong branch of the map).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import identities, qseries, realmap, sets, trimap
from .core import Partition, PartitionError
from .dsl import DslError, SetPredicate
from .enumeration import (
    DESK_CEILING,
    DeskCeilingError,
    NonPositiveSizeError,
    filter_partitions,
    partitions_of,
)
from .identities import (
    BranchMismatchError,
    CountReport,
    NotInjectiveError,
    NotOntoError,
)
from .realmap import BadRatioError, ConePoint, ConePointError
from .sets import UnknownSetError
from .trimap import (
    DimensionOneError,
    NotInM0Error,
    NotInM1Error,
    WrongBranchError,
)

USAGE_ERROR = 2
VERIFY_FAILURE = 1
CONTRACT_VIOLATION = 3


class _UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve_predicate(text: str) -> SetPredicate:
    """A set name from the registry, or predicate text (which may itself
    reference registered names)."""
    try:
        return sets.builtin(text)
    except UnknownSetError:
        pass
    try:
        return sets.parse_set_expression(text)
    except DslError as exc:
        raise _UsageError(f"{text!r} is neither a known set nor valid predicate text: {exc}")


def _parse_partition(text: str) -> Partition:
    try:
        return Partition.from_text(text)
    except PartitionError as exc:
        raise _UsageError(str(exc))


def _check_ceiling(n: int, ceiling: int | None) -> None:
    limit = DESK_CEILING if ceiling is None else ceiling
    if n > limit:
        raise _UsageError(
            f"n={n} exceeds the desk ceiling {limit}; raise it with --desk-ceiling"
        )


# --- report rendering ---------------------------------------------------

def _render_report_text(report: CountReport) -> str:
    lines = []
    header = ["n"] + list(report.columns)
    widths = [max(len(h), 6) for h in header]
    lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for offset, row in enumerate(report.rows):
        cells = [str(report.n_lo + offset)] + [str(v) for v in row]
        lines.append("  ".join(c.rjust(w) for c, w in zip(cells, widths)))
    lines.append("")
    for check in report.checks:
        if check.passed:
            lines.append(f"check {check.label}: pass")
        else:
            lines.append(
                f"check {check.label}: FAIL at n={check.first_failure}"
                f" ({check.lhs_count} vs {check.rhs_count})"
            )
            if check.only_lhs:
                lines.append("  only left : " + ", ".join(str(p) for p in check.only_lhs))
            if check.only_rhs:
                lines.append("  only right: " + ", ".join(str(p) for p in check.only_rhs))
    for note in report.notes:
        lines.append(f"note: {note}")
    lines.append("result: " + ("pass" if report.passed else "FAIL"))
    return "\n".join(lines) + "\n"


def _render_report_csv(report: CountReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n"] + list(report.columns))
    for offset, row in enumerate(report.rows):
        writer.writerow([report.n_lo + offset] + list(row))
    return buf.getvalue()


def _render_report(report: CountReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2) + "\n"
    if fmt == "csv":
        return _render_report_csv(report)
    return _render_report_text(report)


def _render_series(name: str, series: qseries.SeriesCoeffs, fmt: str) -> str:
    if fmt == "json":
        payload = {"name": name, **series.to_json()}
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "coefficient"])
        for n, c in enumerate(series.coeffs):
            writer.writerow([n, c])
        return buf.getvalue()
    lines = [f"{name}: coefficients 0..{series.order}"]
    lines += [f"{n:4d}  {c}" for n, c in enumerate(series.coeffs)]
    return "\n".join(lines) + "\n"


# --- subcommands ---------------------------------------------------------

def _cmd_enumerate(args) -> int:
    _check_ceiling(args.n, args.desk_ceiling)
    ceiling = args.desk_ceiling if args.desk_ceiling is not None else DESK_CEILING
    if args.filter:
        pred = _resolve_predicate(args.filter)
        listing = filter_partitions(args.n, pred, ceiling=ceiling)
    else:
        listing = partitions_of(args.n, ceiling=ceiling)
    if args.format == "json":
        payload = {
            "n": listing.n,
            "count": len(listing),
            "items": [p.to_json() for p in listing],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["partition"])
        for p in listing:
            writer.writerow([str(p)])
        _emit(buf.getvalue(), args.out)
    else:
        _emit("".join(f"{p}\n" for p in listing), args.out)
    return 0


_BRANCHES = {
    "t0": ("T0", trimap.apply_t0),
    "t1": ("T1", trimap.apply_t1),
    "td": ("TD", trimap.apply_td),
    "t0inv": ("T0inv", trimap.apply_t0_inverse),
    "t1inv": ("T1inv", trimap.apply_t1_inverse),
}


def _cmd_map(args) -> int:
    p = _parse_partition(args.partition)
    if args.branch == "auto":
        step = trimap.apply_t(p)
        branch, image = str(step.branch), step.image
    else:
        branch, fn = _BRANCHES[args.branch]
        image = fn(p)
    if args.format == "json":
        payload = {"source": p.to_json(), "branch": branch, "image": image.to_json()}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(f"{p}  branch {branch}  ->  {image}\n", args.out)
    return 0


def _cmd_orbit(args) -> int:
    p = _parse_partition(args.partition)
    result = trimap.orbit(p, args.steps)
    if args.format == "json":
        payload = {
            "start": result.start.to_json(),
            "steps": [
                {"branch": str(s.branch), "image": s.image.to_json()}
                for s in result.steps
            ],
            "terminal": result.terminal.to_json(),
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"start {result.start}"]
        lines += [f"{s.branch} -> {s.image}" for s in result.steps]
        lines.append(f"terminal {result.terminal}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_sets(args) -> int:
    if args.action == "list":
        if args.format == "json":
            _emit(json.dumps(sets.registry_json(), indent=2) + "\n", args.out)
        else:
            rows = [("name", "dim = 2", "dim >= 3")]
            for info in sets.registry_json():
                rows.append((info["name"], info["dim2"], info["dim3"]))
            widths = [max(len(r[i]) for r in rows) for i in range(3)]
            text = "\n".join(
                "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
                for row in rows
            )
            extra = "\nparameterized: Delta0Off(d), Delta1Off(d), GaussG(d) for d >= 1\n"
            _emit(text + "\n" + extra, args.out)
        return 0
    if args.action == "show":
        try:
            pred = sets.builtin(args.name)
        except UnknownSetError:
            raise _UsageError(f"unknown set {args.name!r}")
        _emit(f"{args.name}: {pred.source()}\n", args.out)
        return 0
    # eval
    pred = _resolve_predicate(args.name)
    p = _parse_partition(args.partition)
    _emit(("true" if pred(p) else "false") + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    _check_ceiling(args.nmax, args.desk_ceiling)
    name = args.theorem
    reports: list[tuple[str, CountReport]] = []
    if name != "equicount" and args.args:
        raise _UsageError(f"verify {name} takes no positional set arguments")
    if name == "equicount":
        if len(args.args) != 2:
            raise _UsageError("verify equicount needs exactly two set arguments")
        a = _resolve_predicate(args.args[0])
        b = _resolve_predicate(args.args[1])
        reports.append(("equicount", identities.verify_equicount(
            a, b, args.nmax, names=(args.args[0], args.args[1]))))
    elif name == "delta-m":
        reports.append(("Delta0 = M0", identities.verify_equicount(
            sets.builtin("Delta0"), sets.builtin("M0"), args.nmax, ("Delta0", "M0"))))
        reports.append(("Delta1 = M1", identities.verify_equicount(
            sets.builtin("Delta1"), sets.builtin("M1"), args.nmax, ("Delta1", "M1"))))
    elif name == "offset":
        reports.append((f"offset d={args.d}",
                        identities.verify_offset_theorem(args.d, args.nmax)))
    elif name == "cylinder1":
        reports.append(("cylinder one-step",
                        identities.verify_cylinder_theorems(args.nmax, steps=1)))
    elif name == "cylinder2":
        reports.append(("cylinder two-step",
                        identities.verify_cylinder_theorems(args.nmax, steps=2)))
    elif name == "gauss":
        reports.append((f"gauss d={args.d}",
                        identities.verify_gauss_theorem(args.d, args.nmax)))
    elif name == "distinct":
        reports.append(("distinct", identities.verify_distinct_theorem(args.nmax)))
    elif name == "odd":
        reports.append(("odd", identities.verify_odd_theorem(args.nmax)))
    elif name == "euler":
        reports.append(("euler", identities.verify_euler_chain(args.nmax)))
    else:
        raise _UsageError(f"unknown theorem {name!r}")
    if args.format == "json":
        payload = [{"name": label, **report.to_json()} for label, report in reports]
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = "".join(_render_report_csv(report) for _, report in reports)
    else:
        chunks = []
        for label, report in reports:
            chunks.append(f"== {label} (n <= {args.nmax}) ==\n"
                          + _render_report_text(report))
        text = "\n".join(chunks)
    _emit(text, args.out)
    return 0 if all(report.passed for _, report in reports) else VERIFY_FAILURE


def _cmd_certify(args) -> int:
    _check_ceiling(args.n, args.desk_ceiling)
    domain = _resolve_predicate(args.domain)
    codomain = _resolve_predicate(args.codomain)
    try:
        route = identities.parse_route(args.word)
    except ValueError as exc:
        raise _UsageError(str(exc))
    try:
        cert = identities.certify_bijection(
            domain, codomain, route, args.n, names=(args.domain, args.codomain)
        )
    except (BranchMismatchError, NotInjectiveError, NotOntoError) as exc:
        _emit(f"certification failed: {exc}\n", args.out)
        return VERIFY_FAILURE
    if args.format == "json":
        _emit(json.dumps(cert.to_json(), indent=2) + "\n", args.out)
    else:
        lines = [f"{args.domain} -> {args.codomain} via {args.word} at n={args.n}"]
        lines += [f"{src}  ->  {img}" for src, _, img in cert.pairs]
        lines.append(f"pairs: {len(cert.pairs)}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_series(args) -> int:
    _check_ceiling(args.N, args.desk_ceiling)
    name = args.series
    if name == "P":
        series = qseries.expand_partition_gf(args.N)
    elif name == "divisor":
        series = qseries.divisor_series(args.N)
    elif name == "odd-divisor":
        series = qseries.odd_divisor_series(args.N)
    else:
        pred = _resolve_predicate(name)
        series = qseries.set_series(pred, args.N)
    _emit(_render_series(name, series, args.format), args.out)
    return 0


def _cmd_realmap(args) -> int:
    if args.action != "orbit":
        raise _UsageError(f"unknown realmap action {args.action!r}")
    try:
        coords = tuple(Fraction(part) for part in args.point.split(","))
        point = ConePoint(coords)
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"bad cone point {args.point!r}: {exc}")
    lines = [f"start {point}"]
    steps = []
    for _ in range(args.steps):
        cls = realmap.classify_cone(point)
        if cls.value == "DeltaD":
            lines.append("diagonal reached")
            break
        point = realmap.apply_slow(point)
        steps.append({"class": cls.value, "point": str(point)})
        lines.append(f"{cls.value} -> {point}")
    if args.format == "json":
        payload = {"steps": steps, "terminal": str(point)}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit("\n".join(lines) + "\n", args.out)
    return 0


# --- argument plumbing ----------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripart",
        description="Triangle-map partition toolkit: enumeration, named sets,"
                    " identity verification, q-series.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "table", "json", "csv"),
                        default="text", help="table is an alias for text")
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument("--desk-ceiling", type=int, default=None,
                        help=f"raise the enumeration ceiling (default {DESK_CEILING})")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common],
                       help="list all partitions of n")
    p.add_argument("n", type=int)
    p.add_argument("--filter", default=None, help="set name or predicate text")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("map", parents=[common],
                       help="apply the triangle map to one partition")
    p.add_argument("partition", help="literal like (5,4,2)x[1,1,1]")
    p.add_argument("--branch", choices=("auto",) + tuple(_BRANCHES), default="auto")
    p.set_defaults(fn=_cmd_map)

    p = sub.add_parser("orbit", parents=[common],
                       help="iterate the map until dimension one")
    p.add_argument("partition")
    p.add_argument("--steps", type=int, default=100)
    p.set_defaults(fn=_cmd_orbit)

    p = sub.add_parser("sets", parents=[common], help="inspect named sets")
    p.add_argument("action", choices=("list", "show", "eval"))
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("partition", nargs="?", default=None)
    p.set_defaults(fn=_cmd_sets)

    p = sub.add_parser("verify", parents=[common],
                       help="run a theorem verifier; exit 1 on failure")
    p.add_argument("theorem",
                   help="delta-m | offset | cylinder1 | cylinder2 | gauss"
                        " | distinct | odd | euler | equicount A B")
    p.add_argument("args", nargs="*", default=[])
    p.add_argument("--nmax", type=int, default=40)
    p.add_argument("--d", type=int, default=1)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("certify", parents=[common],
                       help="emit an explicit bijection pairing table")
    p.add_argument("domain")
    p.add_argument("codomain")
    p.add_argument("word", help="route letters over 0, 1, d")
    p.add_argument("n", type=int)
    p.set_defaults(fn=_cmd_certify)

    p = sub.add_parser("series", parents=[common],
                       help="coefficients of a counting series")
    p.add_argument("series", help="set name, predicate text, P, divisor, odd-divisor")
    p.add_argument("--N", type=int, default=DESK_CEILING)
    p.set_defaults(fn=_cmd_series)

    p = sub.add_parser("realmap", parents=[common],
                       help="iterate the slow map on an exact rational cone point")
    p.add_argument("action", choices=("orbit",))
    p.add_argument("point", help="comma-separated rationals, e.g. 7/2,3/2,1")
    p.add_argument("--steps", type=int, default=50)
    p.set_defaults(fn=_cmd_realmap)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.format == "table":
        args.format = "text"
    if args.command == "sets":
        if args.action in ("show", "eval") and args.name is None:
            parser.error(f"sets {args.action} needs a set name")
        if args.action == "eval" and args.partition is None:
            parser.error("sets eval needs a partition literal")
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (PartitionError, DslError, UnknownSetError, NonPositiveSizeError,
            DeskCeilingError, BadRatioError, ConePointError,
            identities.NonPositiveOffsetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (WrongBranchError, DimensionOneError, NotInM0Error, NotInM1Error,
            realmap.OnDiagonalError) as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return CONTRACT_VIOLATION
    except Exception as exc:  # noqa: BLE001 - anything else is an internal fault
        print(f"internal error: {exc}", file=sys.stderr)
        return CONTRACT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
