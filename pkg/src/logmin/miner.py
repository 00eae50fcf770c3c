"""Per-record mining parameters over a partitioned call log.

For every record the miner derives six values:

* time-of-day: the midpoint of start and end, floor((start + end) / 2)
* duration: |end - start| seconds
* frequency: how many calls in the record's own store share its identity
  key and started strictly after the reference time
* provider: longest-prefix lookup of the call number
* boundary: ids of other calls whose start falls inside the window
  [start - t_p, end + t_f] around the record, scanned across all stores
* conference count: other calls whose start AND end both lie within
  epsilon seconds of the record's, also scanned across all stores

Identity keying: incoming and missed records are keyed by the caller's
number. Outgoing records are keyed by their peer (callee) number when the
input carried one; otherwise every outgoing record shares the key "SELF"
and per-callee frequency is simply not available for them.

The per-record functions are straightforward linear scans. mine_store
computes the same values for a whole store through sorted-array bisection,
so the two paths cross-check each other in tests.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .ingest import SELF_NUMBER, CallRecord
from .providers import PrefixTable, UNKNOWN_PROVIDER, resolve_provider
from .store import LogStore

THIRTY_DAYS = 30 * 86400

DEFAULT_TOD_BOUNDARIES = (5, 12, 18)


@dataclass(frozen=True)
class MiningConfig:
    """All tunables of the mining and reporting pipeline.

    t_r is the reference time: only calls starting strictly after it count
    toward frequency. Left as None it is derived per log as
    max(end) - 30 days. t_p / t_f are the look-back / look-ahead window
    sizes for boundary detection, epsilon the near-equality tolerance for
    conference detection. lambda_ blends call-count share against duration
    share in the portability index; port_threshold is the advice cutoff.
    tod_boundaries are the local hours at which morning, afternoon, and
    evening begin; utc_offset (minutes) maps epoch instants to local time.
    """

    t_r: int | None = None
    t_p: int = 1800
    t_f: int = 1800
    epsilon: int = 5
    k: int = 3
    lambda_: float = 0.5
    port_threshold: float = 0.5
    tod_boundaries: tuple[float, float, float] = DEFAULT_TOD_BOUNDARIES
    utc_offset: int = 0
    seed: int = 42

    def __post_init__(self):
        if self.t_r is not None and self.t_r < 0:
            raise ValueError("t_r must be non-negative")
        if self.t_p < 0 or self.t_f < 0:
            raise ValueError("t_p and t_f must be non-negative")
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if not 0.0 <= self.lambda_ <= 1.0:
            raise ValueError("lambda_ must lie in [0, 1]")
        if not 0.0 < self.port_threshold <= 1.0:
            raise ValueError("port_threshold must lie in (0, 1]")
        b = self.tod_boundaries
        if len(b) != 3 or not (0 <= b[0] < b[1] < b[2] < 24):
            raise ValueError("tod_boundaries must be strictly increasing within [0, 24)")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    def resolve(self, records: Iterable[CallRecord]) -> "MiningConfig":
        """Return a config with a concrete t_r, deriving it from the log if unset."""
        if self.t_r is not None:
            return self
        latest = max((r.end for r in records), default=0)
        return replace(self, t_r=max(0, latest - THIRTY_DAYS))

    def echo(self) -> dict:
        """Flat dict of every tunable, for embedding in report output."""
        return {
            "t_r": self.t_r,
            "t_p": self.t_p,
            "t_f": self.t_f,
            "epsilon": self.epsilon,
            "k": self.k,
            "lambda": self.lambda_,
            "port_threshold": self.port_threshold,
            "tod_boundaries": list(self.tod_boundaries),
            "utc_offset": self.utc_offset,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class ParamVector:
    """The six mined parameters for one record."""

    record_id: int
    tod: int
    duration: int
    frequency: int
    provider: str
    boundary: frozenset[int]
    conference_count: int


def record_key(record: CallRecord) -> str:
    """Identity key used for frequency counting and per-number reports."""
    if record.number != SELF_NUMBER:
        return record.number
    return record.peer_number or SELF_NUMBER


def compute_tod(record: CallRecord) -> int:
    """Representative instant of a call: floored mean of start and end."""
    return (record.start + record.end) // 2


def compute_duration(record: CallRecord) -> int:
    """Call length in seconds; tolerant of unnormalized field order."""
    return abs(record.end - record.start)


def compute_frequency(store_slice: Sequence[CallRecord], number: str, t_r: int) -> int:
    """Count of calls in the slice keyed to `number` starting strictly after t_r."""
    return sum(1 for r in store_slice if record_key(r) == number and r.start > t_r)


def compute_boundary(
    all_records: Sequence[CallRecord], subject: CallRecord, t_p: int, t_f: int
) -> set[int]:
    """Ids of other calls starting within [subject.start - t_p, subject.end + t_f]."""
    lo = subject.start - t_p
    hi = subject.end + t_f
    return {r.id for r in all_records if r.id != subject.id and lo <= r.start <= hi}


def compute_conference_count(
    all_records: Sequence[CallRecord], subject: CallRecord, epsilon: int
) -> int:
    """Number of other calls running concurrently with near-equal start and end."""
    return sum(
        1
        for r in all_records
        if r.id != subject.id
        and abs(r.start - subject.start) <= epsilon
        and abs(r.end - subject.end) <= epsilon
    )


def mine_store(
    store: LogStore,
    config: MiningConfig,
    table: PrefixTable,
    *,
    current_provider: str = UNKNOWN_PROVIDER,
) -> dict[int, ParamVector]:
    """Mine every record across all three stores.

    Boundary and conference scans run over the union of the stores (a
    conference peer may be outgoing while the subject is incoming), while
    frequency is counted within the record's own store. The result does not
    depend on record order.
    """
    config = config.resolve(store)
    t_r = config.t_r
    assert t_r is not None

    union = list(store)
    # One sorted view of (start, id, end) serves both window scans.
    by_start = sorted((r.start, r.id, r.end) for r in union)
    starts = [entry[0] for entry in by_start]

    def window_ids(lo: int, hi: int) -> range:
        return range(bisect_left(starts, lo), bisect_right(starts, hi))

    frequencies: dict[int, int] = {}
    for store_slice in (store.ic, store.oc, store.mc):
        counts = Counter(record_key(r) for r in store_slice if r.start > t_r)
        for r in store_slice:
            frequencies[r.id] = counts[record_key(r)]

    result: dict[int, ParamVector] = {}
    for r in union:
        boundary = frozenset(
            by_start[i][1]
            for i in window_ids(r.start - config.t_p, r.end + config.t_f)
            if by_start[i][1] != r.id
        )
        conference = sum(
            1
            for i in window_ids(r.start - config.epsilon, r.start + config.epsilon)
            if by_start[i][1] != r.id and abs(by_start[i][2] - r.end) <= config.epsilon
        )
        result[r.id] = ParamVector(
            record_id=r.id,
            tod=compute_tod(r),
            duration=compute_duration(r),
            frequency=frequencies[r.id],
            provider=resolve_provider(r.number, table, self_provider=current_provider),
            boundary=boundary,
            conference_count=conference,
        )
    return result


def params_as_rows(params: Mapping[int, ParamVector]) -> list[dict]:
    """Stable, JSON-friendly dump of mined parameters, ordered by record id."""
    rows = []
    for record_id in sorted(params):
        p = params[record_id]
        rows.append(
            {
                "record_id": p.record_id,
                "tod": p.tod,
                "duration": p.duration,
                "frequency": p.frequency,
                "provider": p.provider,
                "boundary": sorted(p.boundary),
                "conference_count": p.conference_count,
            }
        )
    return rows
