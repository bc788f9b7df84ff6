"""Command-line front end.

Subcommands: enumerate, stats, expand, verify, ferrers, identities, presets,
config. Output goes to stdout and is byte-deterministic for fixed arguments
(timings only with ``--timing``); logs go to stderr.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Sequence
from typing import TextIO

from .config import (
    ConfigurationError,
    get_config_summary,
    get_default_order,
    get_log_level,
    validate_config_on_startup,
)
from .errors import BaseQPartitionsError
from .forms import expand_form, list_forms, validate_order
from .identities import (
    PARAMETERIZED_FAMILIES,
    Identity,
    get_identity,
    instantiate,
    registry,
    select_identities,
)
from .partitions import enumerate_by_statistic, ferrers, make_partition
from .presets import get_preset_summary, resolve_spec
from .series import Series
from .statistics import StatisticId, all_statistics
from .tally import tally
from .utils.logging_utils import configure_logging
from .utils.validation_utils import parse_int_list, parse_params
from .verification import (
    VerificationReport,
    reports_to_csv,
    to_json_line,
    verify_all,
    verify_oracle,
)
from .weights import UNIT, decoration, parse_weight, weight

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

STATS_WEIGHTS = ("unit", "omega:1,2", "omega:2,2", "tilde1", "tilde2", "hat1", "sign")


class UsageError(Exception):
    """Bad command-line input that argparse could not catch."""


def _partition_arg(text: str):
    try:
        return make_partition(parse_int_list(text, "partition"))
    except ValueError as e:
        raise UsageError(str(e)) from e


def _params_arg(text: str | None) -> dict[str, int]:
    try:
        return parse_params(text)
    except ValueError as e:
        raise UsageError(str(e)) from e


def _order_arg(order: int | None) -> int:
    return validate_order(get_default_order() if order is None else order)


def _write_csv(out: TextIO, header: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    out.write(buffer.getvalue())


def _dumps(data: object) -> str:
    return json.dumps(data, separators=(",", ":"))


def cmd_enumerate(args: argparse.Namespace, out: TextIO) -> int:
    spec = resolve_spec(args.set, _params_arg(args.params))
    stat = StatisticId.parse(args.stat)
    w = parse_weight(args.weight) if args.weight else None

    partitions = enumerate_by_statistic(spec, stat, args.value)
    if args.format == "json":
        for p in partitions:
            record: dict[str, object] = {"parts": list(p.parts), stat.value: args.value}
            if w is not None:
                record["weight"] = weight(w, p)
            out.write(_dumps(record) + "\n")
    elif args.format == "csv":
        header = ["partition", stat.value] + (["weight"] if w is not None else [])
        rows = [
            [str(p), args.value] + ([weight(w, p)] if w is not None else [])
            for p in partitions
        ]
        _write_csv(out, header, rows)
    else:
        for p in partitions:
            line = str(p)
            if w is not None:
                line += f"\t{weight(w, p)}"
            out.write(line + "\n")
    return EXIT_OK


def cmd_stats(args: argparse.Namespace, out: TextIO) -> int:
    p = _partition_arg(args.partition)
    values = all_statistics(p)
    weight_tags = args.weight or list(STATS_WEIGHTS)
    weights = {tag: weight(parse_weight(tag), p) for tag in weight_tags}
    counts = decoration(p)

    if args.format == "json":
        payload = {
            "partition": list(p.parts),
            "statistics": values,
            "weights": weights,
            "decoration": counts.model_dump(),
        }
        out.write(_dumps(payload) + "\n")
    elif args.format == "csv":
        rows: list[list[object]] = [["statistic", k, v] for k, v in values.items()]
        rows += [["weight", k, v] for k, v in weights.items()]
        rows += [["decoration", k, v] for k, v in counts.model_dump().items()]
        _write_csv(out, ["kind", "name", "value"], rows)
    else:
        out.write(f"partition: {p}\n")
        for name, value in values.items():
            out.write(f"{name:>12}: {value}\n")
        for name, value in weights.items():
            out.write(f"{'w ' + name:>12}: {value}\n")
        out.write(f"{'a,b,c,d':>12}: {list(counts.exponent())}\n")
    return EXIT_OK


def _write_series(s: Series, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(_dumps(s.model_dump()) + "\n")
    elif fmt == "csv":
        _write_csv(out, ["exponent", "coefficient"], list(enumerate(s.coeffs)))
    else:
        for exponent, coefficient in enumerate(s.coeffs):
            out.write(f"q^{exponent}\t{coefficient}\n")


def cmd_expand(args: argparse.Namespace, out: TextIO) -> int:
    order = _order_arg(args.order)
    params = _params_arg(args.params)
    if args.name:
        s = expand_form(args.name, params, order)
    elif args.set:
        spec = resolve_spec(args.set, params)
        s = tally(spec, args.stat, args.weight or UNIT, order)
    else:
        raise UsageError("expand needs a form name or --set")
    _write_series(s, args.format, out)
    return EXIT_OK


def _resolve_identities(target: str, params: dict[str, int]) -> list[Identity]:
    if params:
        if target not in PARAMETERIZED_FAMILIES:
            raise UsageError(
                f"--params only applies to {', '.join(sorted(PARAMETERIZED_FAMILIES))}",
            )
        return [instantiate(target, params)]
    if target == "all" or any(ch in target for ch in "*?["):
        selected = select_identities(target)
        if not selected:
            raise UsageError(f"No identity matches {target}")
        return selected
    return [get_identity(target)]


def _write_reports(
    reports: list[VerificationReport],
    fmt: str,
    timing: bool,
    out: TextIO,
) -> None:
    if fmt == "json":
        for report in reports:
            out.write(to_json_line(report, include_timing=timing) + "\n")
    elif fmt == "csv":
        out.write(reports_to_csv(reports, include_timing=timing))
    else:
        for report in reports:
            record = report.to_record(include_timing=timing)
            line = f"{record['id']}\t{record['order']}\t{record['status']}"
            if record["first_mismatch"] is not None:
                line += f"\t{_dumps(record['first_mismatch'])}"
            if timing:
                line += f"\t{record['ms']}ms"
            out.write(line + "\n")


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    order = _order_arg(args.order)
    identities = _resolve_identities(args.identity, _params_arg(args.params))
    reports = verify_all(order, identities=identities)
    if args.oracle:
        for ident in identities:
            reports.extend(verify_oracle(ident, order))
    _write_reports(reports, args.format, args.timing, out)
    return EXIT_OK if all(report.verified for report in reports) else EXIT_FAILED


def cmd_ferrers(args: argparse.Namespace, out: TextIO) -> int:
    p = _partition_arg(args.partition)
    diagram = ferrers(p, args.symbol)
    if diagram:
        out.write(diagram + "\n")
    return EXIT_OK


def cmd_identities(args: argparse.Namespace, out: TextIO) -> int:
    summaries = [ident.summary() for ident in registry()]
    if args.format == "json":
        for summary in summaries:
            out.write(_dumps(summary) + "\n")
    elif args.format == "csv":
        columns = ["id", "statement", "lhs", "rhs", "oracle", "max_order", "experimental"]
        _write_csv(out, columns, [[s[c] for c in columns] for s in summaries])
    else:
        for summary in summaries:
            flag = " [experimental]" if summary["experimental"] else ""
            out.write(f"{summary['id']}{flag}\n    {summary['statement']}\n")
    return EXIT_OK


def cmd_presets(args: argparse.Namespace, out: TextIO) -> int:
    presets = get_preset_summary()
    forms = list_forms()
    if args.format == "json":
        out.write(_dumps({"presets": presets, "forms": forms}) + "\n")
    else:
        out.write("Partition sets:\n")
        for name, description in presets.items():
            out.write(f"  {name}: {description}\n")
        out.write("Series forms:\n")
        for name, description in forms.items():
            out.write(f"  {name}: {description}\n")
    return EXIT_OK


def cmd_config(args: argparse.Namespace, out: TextIO) -> int:
    out.write(get_config_summary() + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpartitions",
        description="Enumerate partitions, expand q-series and verify partition identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["table", "json", "csv"], default="table")

    p = sub.add_parser("enumerate", help="List the members of a set with a given statistic value")
    p.add_argument("--set", required=True, help="Preset name or inline JSON spec")
    p.add_argument("--params", help="Preset parameters, e.g. M=2,k=1,m=2")
    p.add_argument("--stat", default="norm", help="Statistic tag (norm, o, o-conj, ...)")
    p.add_argument("--value", type=int, required=True, help="Statistic value")
    p.add_argument("--weight", help="Also print this weight for every partition")
    add_format(p)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("stats", help="Statistics, weights and decoration of one partition")
    p.add_argument("partition", help="Comma-separated parts, e.g. 4,4,2,1,1")
    p.add_argument("--weight", action="append", help="Weight tag (repeatable)")
    add_format(p)
    p.set_defaults(handler=cmd_stats)

    p = sub.add_parser("expand", help="Expand a named form or a weighted set to an order")
    p.add_argument("name", nargs="?", help="Form name (see `presets`)")
    p.add_argument("--set", help="Expand a set by row summation instead of a form")
    p.add_argument("--stat", default="norm")
    p.add_argument("--weight")
    p.add_argument("--params", help="Form or preset parameters, e.g. M=2,k=1,m=2")
    p.add_argument("--order", type=int)
    add_format(p)
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("verify", help="Verify identities coefficient by coefficient")
    p.add_argument("identity", help="Identity id, shell pattern, all, or a family with --params")
    p.add_argument("--params", help="Instantiate a parameterized family, e.g. M=5,k=1,m=2")
    p.add_argument("--order", type=int)
    p.add_argument("--oracle", action="store_true", help="Also check the oracle build")
    p.add_argument("--timing", action="store_true", help="Report wall time per identity")
    add_format(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("ferrers", help="Print the Ferrers diagram of a partition")
    p.add_argument("partition")
    p.add_argument("--symbol", default="*")
    p.set_defaults(handler=cmd_ferrers)

    p = sub.add_parser("identities", help="List the identity registry")
    add_format(p)
    p.set_defaults(handler=cmd_identities)

    p = sub.add_parser("presets", help="List partition sets and series forms")
    add_format(p)
    p.set_defaults(handler=cmd_presets)

    p = sub.add_parser("config", help="Show the active configuration")
    p.set_defaults(handler=cmd_config)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    try:
        validate_config_on_startup()
        configure_logging(get_log_level())
    except ConfigurationError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE

    try:
        return args.handler(args, out)
    except (BaseQPartitionsError, UsageError) as e:
        logger.debug(f"{args.command} failed: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
