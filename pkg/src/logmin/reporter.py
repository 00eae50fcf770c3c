"""Report building and rendering for mined call logs.

A report is plain data: a kind tag, a generation timestamp, the echoed
configuration, uniform rows, and a kind-specific ``extra`` block. The JSON
rendering is canonical — object keys sorted, floats printed as fixed
four-decimal tokens, integers printed bare, one trailing newline — so equal
reports always render to identical bytes, and a parsed report re-renders to
the bytes it came from. Text rendering is a tab-delimited table for humans
and spreadsheets; it is not meant to be parsed back.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone

from .cluster import FeaturePoint, kmeans, label_clusters
from .miner import MiningConfig, compute_duration, compute_tod, record_key
from .providers import PrefixTable, resolve_provider
from .store import LogStore, flatten

REPORT_KINDS = (
    "FrequencyCount",
    "FrequencyCluster",
    "CalendarMV",
    "CalendarWV",
    "CalendarDV",
    "Tod",
    "Mnp",
)

TOD_SECTIONS = ("MR", "AR", "ER")

_CALENDAR_KINDS = {"month": "CalendarMV", "week": "CalendarWV", "day": "CalendarDV"}


@dataclass(frozen=True)
class Report:
    kind: str
    generated_at: int
    config_echo: dict
    rows: tuple[dict, ...]
    extra: dict


@dataclass(frozen=True)
class MnpAdvice:
    """Porting recommendation attached to an Mnp report."""

    advised: bool
    best_alternative: str | None
    threshold: float
    current_provider: str
    mode: str

    def as_dict(self) -> dict:
        return {
            "advised": self.advised,
            "best_alternative": self.best_alternative,
            "threshold": self.threshold,
            "current_provider": self.current_provider,
            "mode": self.mode,
        }

    @classmethod
    def from_report(cls, report: Report) -> "MnpAdvice":
        d = report.extra["advice"]
        return cls(
            advised=d["advised"],
            best_alternative=d["best_alternative"],
            threshold=d["threshold"],
            current_provider=d["current_provider"],
            mode=d["mode"],
        )


# --- canonical rendering ---------------------------------------------------


def _float_token(x: float) -> str:
    token = f"{x:.4f}"
    return "0.0000" if token == "-0.0000" else token


def _canon(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _float_token(value)
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    if isinstance(value, dict):
        if not all(isinstance(k, str) for k in value):
            raise TypeError("report object keys must be strings")
        parts = (f"{json.dumps(k)}:{_canon(value[k])}" for k in sorted(value))
        return "{" + ",".join(parts) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_canon(v) for v in value) + "]"
    raise TypeError(f"unrenderable value of type {type(value).__name__}")


def canonical_json(value) -> bytes:
    """Render any report-compatible value to canonical JSON bytes."""
    return (_canon(value) + "\n").encode()


def _text_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _float_token(value)
    if value is None:
        return ""
    return str(value)


def render(report: Report, fmt: str = "json") -> bytes:
    """Serialize a report; fmt is "json" (canonical) or "text" (tab-delimited)."""
    if fmt == "json":
        payload = {
            "kind": report.kind,
            "generated_at": report.generated_at,
            "config_echo": report.config_echo,
            "rows": list(report.rows),
            "extra": report.extra,
        }
        return canonical_json(payload)
    if fmt == "text":
        lines = [f"# kind: {report.kind}", f"# generated_at: {report.generated_at}"]
        if report.extra:
            lines.append("# extra: " + _canon(report.extra))
        if report.rows:
            cols = list(report.rows[0].keys())
            lines.append("\t".join(cols))
            for row in report.rows:
                lines.append("\t".join(_text_cell(row[c]) for c in cols))
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def report_from_json(data: bytes | str) -> Report:
    """Parse a JSON rendering back into a Report.

    Round trip: render(report_from_json(blob)) reproduces blob byte for byte
    whenever blob itself came from render().
    """
    obj = json.loads(data)
    expected = {"kind", "generated_at", "config_echo", "rows", "extra"}
    if not isinstance(obj, dict) or set(obj) != expected:
        raise ValueError("not a report: expected exactly the five report fields")
    if not isinstance(obj["kind"], str) or not isinstance(obj["generated_at"], int):
        raise ValueError("not a report: bad kind or generated_at")
    if not isinstance(obj["rows"], list) or not all(isinstance(r, dict) for r in obj["rows"]):
        raise ValueError("not a report: rows must be objects")
    return Report(
        kind=obj["kind"],
        generated_at=obj["generated_at"],
        config_echo=obj["config_echo"],
        rows=tuple(obj["rows"]),
        extra=obj["extra"],
    )


# --- report builders -------------------------------------------------------


def _stamp(now: int | None) -> int:
    return int(time.time()) if now is None else int(now)


def _local_dt(epoch_seconds: int, utc_offset_minutes: int) -> datetime:
    # Shift then read as UTC: applies a fixed offset without consulting any tz database.
    return datetime.fromtimestamp(epoch_seconds + utc_offset_minutes * 60, tz=timezone.utc)


def per_number_frequencies(store: LogStore, t_r: int) -> dict[str, int]:
    """Calls per counterpart number across all three slices, newer than t_r."""
    counts: Counter[str] = Counter()
    for r in flatten(store):
        if r.start > t_r:
            counts[record_key(r)] += 1
    return dict(counts)


def _label_rank(label: str) -> int:
    return int(label[1:])


def frequency_report(
    store: LogStore,
    config: MiningConfig,
    *,
    mode: str = "count",
    now: int | None = None,
) -> Report:
    """Per-number call frequencies, plain ("count") or k-means grouped ("cluster")."""
    cfg = config.resolve(flatten(store))
    freqs = per_number_frequencies(store, cfg.t_r)
    if mode == "count":
        rows = tuple(
            {"number": n, "count": c}
            for n, c in sorted(freqs.items(), key=lambda kv: (-kv[1], kv[0]))
        )
        return Report("FrequencyCount", _stamp(now), cfg.echo(), rows, {})
    if mode == "cluster":
        points = [FeaturePoint(n, (float(c),)) for n, c in freqs.items()]
        clustering = kmeans(points, cfg.k, cfg.seed)
        labels = label_clusters(clustering)
        rows = sorted(
            (
                {"number": n, "count": c, "label": labels[clustering.assignments[n]]}
                for n, c in freqs.items()
            ),
            key=lambda row: (_label_rank(row["label"]), -row["count"], row["number"]),
        )
        clusters = [
            {
                "label": labels[ci],
                "centroid": clustering.centroids[ci][0],
                "size": len(clustering.members(ci)),
            }
            for ci in sorted(range(clustering.k), key=lambda ci: _label_rank(labels[ci]))
        ]
        return Report(
            "FrequencyCluster", _stamp(now), cfg.echo(), tuple(rows), {"clusters": clusters}
        )
    raise ValueError(f"unknown frequency mode {mode!r}")


def calendar_report(
    store: LogStore,
    config: MiningConfig,
    *,
    granularity: str = "month",
    now: int | None = None,
) -> Report:
    """Call volume bucketed by local month, ISO week, or day.

    Each call lands in the bucket holding the local date of its time-of-day
    midpoint; buckets with no calls are omitted.
    """
    if granularity not in _CALENDAR_KINDS:
        raise ValueError(f"unknown granularity {granularity!r}")
    cfg = config.resolve(flatten(store))
    buckets: Counter[str] = Counter()
    for r in flatten(store):
        d = _local_dt(compute_tod(r), cfg.utc_offset).date()
        if granularity == "month":
            bucket = f"{d.year:04d}-{d.month:02d}"
        elif granularity == "week":
            iso = d.isocalendar()
            bucket = f"{iso[0]:04d}-W{iso[1]:02d}"
        else:
            bucket = d.isoformat()
        buckets[bucket] += 1
    rows = tuple({"bucket": b, "count": c} for b, c in sorted(buckets.items()))
    return Report(_CALENDAR_KINDS[granularity], _stamp(now), cfg.echo(), rows, {})


def tod_band(epoch_seconds: int, boundaries: tuple[int, int, int], utc_offset: int) -> str:
    """Section of the local day a moment falls in: MR, AR, or ER.

    With boundaries (m, a, e): MR covers [m, a), AR covers [a, e), and ER
    wraps midnight, covering [e, 24) plus [0, m).
    """
    dt = _local_dt(epoch_seconds, utc_offset)
    hour = dt.hour + dt.minute / 60 + dt.second / 3600
    m, a, e = boundaries
    if m <= hour < a:
        return "MR"
    if a <= hour < e:
        return "AR"
    return "ER"


def tod_report(store: LogStore, config: MiningConfig, *, now: int | None = None) -> Report:
    """Call volume per local time-of-day section (morning/afternoon/evening)."""
    cfg = config.resolve(flatten(store))
    counts = {section: 0 for section in TOD_SECTIONS}
    for r in flatten(store):
        counts[tod_band(compute_tod(r), cfg.tod_boundaries, cfg.utc_offset)] += 1
    total = sum(counts.values())
    rows = tuple(
        {
            "section": section,
            "count": counts[section],
            "share": counts[section] / total if total else 0.0,
        }
        for section in TOD_SECTIONS
    )
    return Report("Tod", _stamp(now), cfg.echo(), rows, {"boundaries": list(cfg.tod_boundaries)})


def mnp_report(
    store: LogStore,
    config: MiningConfig,
    table: PrefixTable,
    *,
    current_provider: str,
    now: int | None = None,
) -> Report:
    """Per-provider porting index over the user's traffic.

    A provider's index blends its share of calls and its share of talk time
    (weighted lambda / 1-lambda; pure call share when total talk time is
    zero), so indices always sum to 1. Porting is advised when some provider
    other than the current one scores strictly above the threshold.

    Provider attribution prefers outgoing calls that carry the counterpart
    number ("peer" mode); without any, it falls back to incoming traffic
    ("incoming_only" mode — weaker evidence, since callers choose when to
    call). With no usable traffic at all the report is empty and flagged
    "empty_traffic".
    """
    cfg = config.resolve(flatten(store))
    outgoing = [r for r in store.oc if r.peer_number]
    if outgoing:
        mode = "peer"
        attributed = [(r, r.peer_number) for r in outgoing]
    else:
        mode = "incoming_only" if store.ic else "empty_traffic"
        attributed = [(r, r.number) for r in store.ic]

    if not attributed:
        advice = MnpAdvice(False, None, cfg.port_threshold, current_provider, mode)
        return Report("Mnp", _stamp(now), cfg.echo(), (), {"advice": advice.as_dict()})

    calls: Counter[str] = Counter()
    durations: Counter[str] = Counter()
    for r, number in attributed:
        provider = resolve_provider(number, table)
        calls[provider] += 1
        durations[provider] += compute_duration(r)

    total_calls = sum(calls.values())
    total_duration = sum(durations.values())
    providers = set(calls) | {current_provider}
    index: dict[str, float] = {}
    for p in providers:
        count_share = calls.get(p, 0) / total_calls
        if total_duration > 0:
            duration_share = durations.get(p, 0) / total_duration
            index[p] = cfg.lambda_ * count_share + (1.0 - cfg.lambda_) * duration_share
        else:
            index[p] = count_share

    ordered = sorted(providers, key=lambda p: (-index[p], p))
    rows = tuple(
        {"provider": p, "index": index[p], "calls": calls.get(p, 0), "duration": durations.get(p, 0)}
        for p in ordered
    )
    alternatives = [p for p in ordered if p != current_provider]
    best = alternatives[0] if alternatives else None
    advised = best is not None and index[best] > cfg.port_threshold
    advice = MnpAdvice(advised, best, cfg.port_threshold, current_provider, mode)
    return Report("Mnp", _stamp(now), cfg.echo(), rows, {"advice": advice.as_dict()})
