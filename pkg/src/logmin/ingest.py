"""Parsing of call-log export files into validated records.

Two interchangeable on-disk formats are supported:

* CSV with header ``id,number,name,start,end`` (UTF-8, LF line endings)
* JSON-lines with one object per line carrying the same five keys

Both accept an optional sixth field, ``peer_number``: the number of the
other party on an outgoing call, where the ``number`` field itself holds
the literal token ``SELF``. Reports that need per-callee detail degrade
gracefully when the column is absent.

Timestamps are epoch seconds UTC. A row whose end precedes its start is
normalized by swapping the two values, and the swap is recorded as a
warning rather than an error. An empty name is replaced with the
``Un-Known`` token so downstream code never branches on emptiness.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadHeader, DuplicateId, MalformedRow

SELF_NUMBER = "SELF"
UNKNOWN_NAME = "Un-Known"

CSV_HEADER = ("id", "number", "name", "start", "end")
CSV_HEADER_WITH_PEER = CSV_HEADER + ("peer_number",)


@dataclass(frozen=True, slots=True)
class CallRecord:
    """One parsed call-log entry.

    ``number`` is the remote party for incoming/missed calls and the token
    ``SELF`` for outgoing calls; ``peer_number`` then optionally names the
    callee. ``start == end`` marks a call that was never answered.
    """

    id: int
    number: str
    name: str
    start: int
    end: int
    peer_number: str | None = None

    @property
    def outgoing(self) -> bool:
        return self.number == SELF_NUMBER


@dataclass(frozen=True)
class ParseReport:
    """Result of parsing one export file.

    ``warnings`` holds (line number, message) pairs, one per normalization
    applied; ``records`` preserve source order.
    """

    records: tuple[CallRecord, ...]
    warnings: tuple[tuple[int, str], ...]
    source: str


def _parse_nonneg_int(token: str, field: str, line: int | None) -> int:
    text = token.strip()
    if not (text.isascii() and text.isdigit()):
        raise MalformedRow(f"field {field!r} must be a non-negative integer, got {token!r}", line)
    return int(text)


def parse_record(row: Sequence, line: int | None = None) -> tuple[CallRecord, list[str]]:
    """Build a CallRecord from an ordered field list [id, number, name, start, end].

    A sixth element, the peer number, is accepted and may be empty. Returns
    the record plus any normalization warnings (timestamp swap). Raises
    MalformedRow for missing fields, non-integer numerics, or an empty
    number.
    """
    if len(row) not in (5, 6):
        raise MalformedRow(f"expected 5 or 6 fields, got {len(row)}", line)

    rec_id = _parse_nonneg_int(str(row[0]), "id", line)
    number = str(row[1]).strip()
    if not number:
        raise MalformedRow("field 'number' must be non-empty", line)
    name = str(row[2]).strip() or UNKNOWN_NAME
    start = _parse_nonneg_int(str(row[3]), "start", line)
    end = _parse_nonneg_int(str(row[4]), "end", line)

    peer: str | None = None
    if len(row) == 6 and row[5] is not None:
        peer = str(row[5]).strip() or None

    warnings = []
    if end < start:
        start, end = end, start
        warnings.append(f"record {rec_id}: start/end reversed, swapped")

    return CallRecord(rec_id, number, name, start, end, peer), warnings


def _finish(rows: Iterable[tuple[int, Sequence]], source: str) -> ParseReport:
    records: list[CallRecord] = []
    warnings: list[tuple[int, str]] = []
    seen: dict[int, int] = {}
    for line, row in rows:
        record, row_warnings = parse_record(row, line)
        if record.id in seen:
            raise DuplicateId(
                f"id {record.id} appears on lines {seen[record.id]} and {line} of {source}"
            )
        seen[record.id] = line
        records.append(record)
        warnings.extend((line, message) for message in row_warnings)
    return ParseReport(tuple(records), tuple(warnings), source)


def parse_csv(path: str) -> ParseReport:
    """Parse a CSV export. The header must match the documented schema."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise BadHeader(f"{path}: empty file, expected header {','.join(CSV_HEADER)}")
        if header not in (CSV_HEADER, CSV_HEADER_WITH_PEER):
            raise BadHeader(f"{path}: bad header {','.join(header)!r}")
        rows = [(line, row) for line, row in enumerate(reader, start=2) if row]
    return _finish(rows, path)


_JSONL_KEYS = frozenset(CSV_HEADER)
_JSONL_KEYS_WITH_PEER = frozenset(CSV_HEADER_WITH_PEER)


def parse_jsonl(path: str) -> ParseReport:
    """Parse a JSON-lines export; contract identical to parse_csv."""
    rows: list[tuple[int, Sequence]] = []
    with open(path, encoding="utf-8") as handle:
        for line, text in enumerate(handle, start=1):
            if not text.strip():
                continue
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise MalformedRow(f"invalid JSON: {exc.msg}", line)
            if not isinstance(obj, dict):
                raise MalformedRow("expected a JSON object", line)
            keys = frozenset(obj)
            if keys not in (_JSONL_KEYS, _JSONL_KEYS_WITH_PEER):
                raise MalformedRow(f"expected keys {sorted(_JSONL_KEYS)}, got {sorted(keys)}", line)
            for field in ("id", "start", "end"):
                if isinstance(obj[field], bool) or not isinstance(obj[field], int):
                    raise MalformedRow(f"field {field!r} must be an integer", line)
                if obj[field] < 0:
                    raise MalformedRow(f"field {field!r} must be non-negative", line)
            for field in ("number", "name"):
                if not isinstance(obj[field], str):
                    raise MalformedRow(f"field {field!r} must be a string", line)
            peer = obj.get("peer_number")
            if peer is not None and not isinstance(peer, str):
                raise MalformedRow("field 'peer_number' must be a string or null", line)
            row = [obj["id"], obj["number"], obj["name"], obj["start"], obj["end"]]
            if "peer_number" in obj:
                row.append(peer)
            rows.append((line, row))
    return _finish(rows, path)


def _with_peer_column(records: Sequence[CallRecord]) -> bool:
    return any(r.peer_number is not None for r in records)


def dump_csv(records: Sequence[CallRecord], handle) -> None:
    """Write records as CSV to an open text stream; peer column only when used."""
    peer = _with_peer_column(records)
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(CSV_HEADER_WITH_PEER if peer else CSV_HEADER)
    for r in records:
        row = [r.id, r.number, r.name, r.start, r.end]
        if peer:
            row.append(r.peer_number or "")
        writer.writerow(row)


def dump_jsonl(records: Sequence[CallRecord], handle) -> None:
    """Write records as JSON lines to an open text stream, mirroring dump_csv."""
    peer = _with_peer_column(records)
    for r in records:
        obj = {"id": r.id, "number": r.number, "name": r.name, "start": r.start, "end": r.end}
        if peer:
            obj["peer_number"] = r.peer_number
        handle.write(json.dumps(obj, sort_keys=False) + "\n")


def write_csv(records: Sequence[CallRecord], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        dump_csv(records, handle)


def write_jsonl(records: Sequence[CallRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        dump_jsonl(records, handle)
