"""Aggregation of per-session relevance judgments.

Each reviewed session is scored three ways — share of calls judged relevant
(cri), partially relevant (pri), and irrelevant (cii) — as percentages that
must account for (nearly) all calls in the session. The summary reduces a
batch of sessions to the mean of each column plus a cumulative usefulness
figure: mean relevant plus mean partially-relevant.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BadHeader, BadScore, DuplicateId, EmptyInput, MalformedRow

SESSIONS_HEADER = ("session_id", "cri", "pri", "cii")

# Percentages are hand-tallied, so allow slack for rounding in the source data.
SUM_TOLERANCE = 0.2


@dataclass(frozen=True)
class SessionScore:
    session_id: int
    cri: float
    pri: float
    cii: float

    def __post_init__(self):
        if self.session_id < 1:
            raise BadScore(f"session_id must be positive, got {self.session_id}")
        for name in ("cri", "pri", "cii"):
            value = getattr(self, name)
            if not 0.0 <= value <= 100.0:
                raise BadScore(f"session {self.session_id}: {name}={value} outside [0, 100]")
        total = self.cri + self.pri + self.cii
        if abs(total - 100.0) > SUM_TOLERANCE:
            raise BadScore(
                f"session {self.session_id}: scores sum to {total}, expected 100"
                f" within {SUM_TOLERANCE}"
            )


@dataclass(frozen=True)
class RelevanceSummary:
    mean_cri: float
    mean_pri: float
    mean_cii: float
    cumulative: float

    def as_dict(self) -> dict:
        return {
            "mean_cri": self.mean_cri,
            "mean_pri": self.mean_pri,
            "mean_cii": self.mean_cii,
            "cumulative": self.cumulative,
        }


def summarize(scores: Sequence[SessionScore]) -> RelevanceSummary:
    """Column means over a batch; cumulative = mean_cri + mean_pri."""
    if not scores:
        raise EmptyInput("no session scores to summarize")
    mean_cri = statistics.fmean(s.cri for s in scores)
    mean_pri = statistics.fmean(s.pri for s in scores)
    mean_cii = statistics.fmean(s.cii for s in scores)
    return RelevanceSummary(mean_cri, mean_pri, mean_cii, mean_cri + mean_pri)


def load_sessions_csv(path: str | Path) -> list[SessionScore]:
    with open(path, newline="", encoding="utf-8") as fh:
        return _parse_sessions(fh, str(path))


def _parse_sessions(lines: Iterable[str], source: str) -> list[SessionScore]:
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise BadHeader(f"{source}: empty file") from None
    if tuple(h.strip() for h in header) != SESSIONS_HEADER:
        raise BadHeader(f"{source}: expected header {','.join(SESSIONS_HEADER)}")

    scores: list[SessionScore] = []
    seen: dict[int, int] = {}
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise MalformedRow(f"expected 4 fields, got {len(row)}", line=line)
        try:
            sid = int(row[0])
            cri, pri, cii = (float(cell) for cell in row[1:])
        except ValueError as exc:
            raise MalformedRow(str(exc), line=line) from None
        if sid in seen:
            raise DuplicateId(f"session {sid} on lines {seen[sid]} and {line}")
        seen[sid] = line
        try:
            scores.append(SessionScore(sid, cri, pri, cii))
        except BadScore as exc:
            raise BadScore(f"line {line}: {exc}") from None
    return scores


def load_bundled_sessions() -> list[SessionScore]:
    """The review batch shipped with the package (15 sessions)."""
    text = files("logmin").joinpath("data/sessions.csv").read_text(encoding="utf-8")
    return _parse_sessions(text.splitlines(), "data/sessions.csv")
