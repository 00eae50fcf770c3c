"""Command-line front end.

Subcommands: `ingest` (validate and re-emit a log), `mine` (per-call
features), `report freq|calendar|tod|mnp` (aggregates, optionally with a
chart written next to the data), `gen` (synthetic fixtures), and
`eval-relevance` (averages of hand-scored review sessions).

Settings resolve in three layers: built-in defaults, then a `--config`
file of flat `key = value` lines, then individual flags. Reports go to
stdout unless `--out` names a file; diagnostics go to stderr. Exit status
is 0 on success, 1 for bad input or settings, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import ingest
from .errors import LogMinError, MalformedRow, TooManyClusters
from .miner import MiningConfig, mine_store, params_as_rows
from .providers import UNKNOWN_PROVIDER, empty_table, load_prefix_table
from .relevance import load_bundled_sessions, load_sessions_csv, summarize
from .reporter import (
    calendar_report,
    canonical_json,
    frequency_report,
    mnp_report,
    render,
    tod_report,
)
from .store import partition, store_counts
from .synth import GeneratorProfile, generate

_INT_SETTINGS = ("t_r", "t_p", "t_f", "epsilon", "k", "utc_offset", "seed")
_FLOAT_SETTINGS = ("lambda_", "port_threshold")


def load_config_file(path: str) -> dict:
    """Parse flat `key = value` settings; `#` starts a comment line."""
    settings: dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise MalformedRow(f"{path}: expected 'key = value'", line=lineno)
        key = key.strip().lower().replace("-", "_")
        if key == "lambda":
            key = "lambda_"
        value = value.strip()
        try:
            if key == "tod_boundaries":
                settings[key] = tuple(int(part) for part in value.split(","))
            elif key in _INT_SETTINGS:
                settings[key] = int(value)
            elif key in _FLOAT_SETTINGS:
                settings[key] = float(value)
            else:
                raise MalformedRow(f"{path}: unknown setting {key!r}", line=lineno)
        except ValueError:
            raise MalformedRow(f"{path}: bad value for {key}: {value!r}", line=lineno) from None
    return settings


def build_config(args: argparse.Namespace) -> MiningConfig:
    settings = load_config_file(args.config) if getattr(args, "config", None) else {}
    overrides = (
        ("tr", "t_r"),
        ("tp", "t_p"),
        ("tf", "t_f"),
        ("epsilon", "epsilon"),
        ("k", "k"),
        ("lambda_", "lambda_"),
        ("threshold", "port_threshold"),
        ("utc_offset", "utc_offset"),
        ("seed", "seed"),
    )
    for attr, key in overrides:
        value = getattr(args, attr, None)
        if value is not None:
            settings[key] = value
    try:
        return MiningConfig(**settings)
    except (TypeError, ValueError) as exc:
        raise MalformedRow(f"bad configuration: {exc}") from None


def _input_format(args: argparse.Namespace) -> str:
    if args.format:
        return args.format
    return "jsonl" if args.infile.endswith((".jsonl", ".ndjson")) else "csv"


def _read_records(args: argparse.Namespace) -> ingest.ParseReport:
    if _input_format(args) == "jsonl":
        report = ingest.parse_jsonl(args.infile)
    else:
        report = ingest.parse_csv(args.infile)
    for line, message in report.warnings:
        print(f"warning: {report.source}:{line}: {message}", file=sys.stderr)
    return report


def _load_table(args: argparse.Namespace):
    if getattr(args, "provider_table", None):
        return load_prefix_table(args.provider_table)
    return empty_table()


def _write_bytes(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _write_records(records, fmt: str, out: str | None) -> None:
    if out:
        (ingest.write_jsonl if fmt == "jsonl" else ingest.write_csv)(records, out)
    else:
        (ingest.dump_jsonl if fmt == "jsonl" else ingest.dump_csv)(records, sys.stdout)


def cmd_ingest(args: argparse.Namespace) -> int:
    parsed = _read_records(args)
    ic, oc, mc = store_counts(partition(parsed.records))
    _write_records(parsed.records, args.out_format or _input_format(args), args.out)
    print(
        f"{len(parsed.records)} records (ic={ic} oc={oc} mc={mc}),"
        f" {len(parsed.warnings)} warning(s)",
        file=sys.stderr,
    )
    return 0


def cmd_mine(args: argparse.Namespace) -> int:
    store = partition(_read_records(args).records)
    params = mine_store(store, build_config(args), _load_table(args),
                        current_provider=args.current_provider)
    _write_bytes(canonical_json(params_as_rows(params)), args.out)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    store = partition(_read_records(args).records)
    config = build_config(args)
    if args.family == "freq":
        try:
            report = frequency_report(store, config, mode=args.mode, now=args.now)
        except TooManyClusters as exc:
            raise TooManyClusters(f"{exc}; lower --k or widen the log window") from None
    elif args.family == "calendar":
        report = calendar_report(store, config, granularity=args.granularity, now=args.now)
    elif args.family == "tod":
        report = tod_report(store, config, now=args.now)
    else:
        report = mnp_report(store, config, _load_table(args),
                            current_provider=args.current_provider, now=args.now)
    _write_bytes(render(report, args.fmt), args.out)
    if args.fig:
        from .figures import render_report_figure

        render_report_figure(report, args.fig)
    return 0


def _parse_clusters(text: str) -> tuple[tuple[int, int], ...]:
    clusters = []
    for part in text.split(","):
        center, _, spread = part.partition(":")
        try:
            clusters.append((int(center), int(spread) if spread else 0))
        except ValueError:
            raise MalformedRow(f"bad cluster spec {part!r}, want CENTER[:SPREAD]") from None
    return tuple(clusters)


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        profile = GeneratorProfile(
            seed=args.seed,
            n=args.n,
            contacts=args.contacts,
            planted_clusters=_parse_clusters(args.clusters) if args.clusters else (),
            conference_rate=args.conference_rate,
            missed_rate=args.missed_rate,
            time_span=args.time_span,
        )
    except ValueError as exc:
        raise MalformedRow(f"bad generator profile: {exc}") from None
    _write_records(generate(profile), args.format, args.out)
    return 0


def cmd_eval_relevance(args: argparse.Namespace) -> int:
    scores = load_sessions_csv(args.sessions) if args.sessions else load_bundled_sessions()
    summary = summarize(scores)
    _write_bytes(canonical_json(summary.as_dict()), args.out)
    if args.fig:
        from .figures import render_relevance_figure

        render_relevance_figure(summary, args.fig)
    return 0


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="infile", required=True, help="input log (CSV or JSON lines)")
    p.add_argument("--format", choices=("csv", "jsonl"),
                   help="input format (default: guessed from extension)")


def _add_config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="settings file of flat key = value lines")
    p.add_argument("--tr", type=int, metavar="SECONDS",
                   help="frequency cutoff; only calls starting after this count"
                        " (default: 30 days before the last call)")
    p.add_argument("--tp", type=int, metavar="SECONDS", help="boundary window lead")
    p.add_argument("--tf", type=int, metavar="SECONDS", help="boundary window tail")
    p.add_argument("--epsilon", type=int, metavar="SECONDS",
                   help="conference alignment tolerance")
    p.add_argument("--k", type=int, help="number of frequency clusters")
    p.add_argument("--lambda", type=float, dest="lambda_", metavar="WEIGHT",
                   help="call-share weight in the porting index (talk time gets the rest)")
    p.add_argument("--threshold", type=float, help="porting advice threshold")
    p.add_argument("--utc-offset", type=int, dest="utc_offset", metavar="MINUTES",
                   help="minutes added to UTC for local dates")
    p.add_argument("--seed", type=int, help="clustering seed")


def _add_provider_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--provider-table", dest="provider_table",
                   help="CSV of prefix,provider rows (default: resolve nothing)")
    p.add_argument("--current-provider", dest="current_provider", default=UNKNOWN_PROVIDER,
                   help="the provider currently serving this phone")


def _add_report_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fmt", choices=("json", "text"), default="json", help="output format")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--fig", metavar="PATH", help="also render a chart to this image file")
    p.add_argument("--now", type=int, metavar="EPOCH",
                   help="pin the generated_at stamp (for reproducible output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logmin",
        description="Mine a personal call log: validate it, extract per-call features,"
                    " and build frequency, calendar, time-of-day, and porting reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate a log and re-emit it normalized")
    _add_input_args(p)
    p.add_argument("--out", help="write normalized records here instead of stdout")
    p.add_argument("--out-format", dest="out_format", choices=("csv", "jsonl"),
                   help="output format (default: same as input)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("mine", help="per-call feature vectors as canonical JSON")
    _add_input_args(p)
    _add_config_args(p)
    _add_provider_args(p)
    p.add_argument("--out", help="write the feature rows here instead of stdout")
    p.set_defaults(func=cmd_mine)

    report = sub.add_parser("report", help="aggregate reports over one log")
    rsub = report.add_subparsers(dest="family", required=True)

    p = rsub.add_parser("freq", help="calls per number, flat or clustered")
    _add_input_args(p)
    _add_config_args(p)
    p.add_argument("--mode", choices=("count", "cluster"), default="count")
    _add_report_output_args(p)
    p.set_defaults(func=cmd_report)

    p = rsub.add_parser("calendar", help="call volume per month, week, or day")
    _add_input_args(p)
    _add_config_args(p)
    p.add_argument("--granularity", choices=("month", "week", "day"), default="month")
    _add_report_output_args(p)
    p.set_defaults(func=cmd_report)

    p = rsub.add_parser("tod", help="call volume by time-of-day section")
    _add_input_args(p)
    _add_config_args(p)
    _add_report_output_args(p)
    p.set_defaults(func=cmd_report)

    p = rsub.add_parser("mnp", help="per-provider porting index and advice")
    _add_input_args(p)
    _add_config_args(p)
    _add_provider_args(p)
    _add_report_output_args(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("gen", help="generate a synthetic log")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=100, help="record count (plain shape)")
    p.add_argument("--contacts", type=int, default=10)
    p.add_argument("--clusters", metavar="C[:S],...",
                   help="plant per-contact call counts near these centers;"
                        " overrides --n")
    p.add_argument("--conference-rate", dest="conference_rate", type=float, default=0.0)
    p.add_argument("--missed-rate", dest="missed_rate", type=float, default=0.1)
    p.add_argument("--time-span", dest="time_span", type=int, default=30 * 86400,
                   metavar="SECONDS")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out", help="write records here instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval-relevance", help="averages over hand-scored review sessions")
    p.add_argument("--sessions", help="session scores CSV (default: bundled batch)")
    p.add_argument("--out", help="write the summary here instead of stdout")
    p.add_argument("--fig", metavar="PATH", help="also render a chart to this image file")
    p.set_defaults(func=cmd_eval_relevance)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LogMinError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
