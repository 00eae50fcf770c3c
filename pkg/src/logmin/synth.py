"""Deterministic synthetic call-log generation.

All randomness flows through one ``random.Random(seed)`` (MT19937), and
draws happen in a fixed order, so a profile always produces the same
records — byte-identical once written out. Two shapes are supported:

* plain: exactly ``n`` calls spread uniformly over the contact pool;
* planted: per-contact call counts drawn near fixed cluster centers
  (contacts rotate through the centers round-robin), so that grouping
  contacts by call frequency has a known right answer. Here ``n`` is
  ignored; the total follows from the drawn counts.

A slice of calls can be time-aligned to an earlier call (within two
seconds on both ends) to simulate conference legs; alignment rewrites
times only and never adds or removes records.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .ingest import SELF_NUMBER, UNKNOWN_NAME, CallRecord
from .miner import THIRTY_DAYS

# 4-digit number blocks the fake numbering plan hands out; data/providers.csv
# maps each block to a carrier so generated logs exercise provider lookup.
PREFIX_POOL = ("9810", "9820", "9830", "9846", "7011", "7022", "8030", "6360")

OUTGOING_SHARE = 0.4
UNKNOWN_NAME_SHARE = 0.2
MAX_TALK_SECONDS = 1800


@dataclass(frozen=True)
class GeneratorProfile:
    seed: int = 0
    n: int = 100
    contacts: int = 10
    planted_clusters: tuple[tuple[int, int], ...] = ()
    conference_rate: float = 0.0
    missed_rate: float = 0.1
    time_span: int = THIRTY_DAYS

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.contacts < 1:
            raise ValueError("need at least one contact")
        if not 0.0 <= self.conference_rate <= 1.0:
            raise ValueError("conference_rate must lie in [0, 1]")
        if not 0.0 <= self.missed_rate <= 1.0:
            raise ValueError("missed_rate must lie in [0, 1]")
        if self.time_span < 1:
            raise ValueError("time_span must be positive")
        for center, spread in self.planted_clusters:
            if center < 0 or spread < 0:
                raise ValueError("cluster centers and spreads must be non-negative")


def contact_number(index: int) -> str:
    """Stable fake number for contact `index` (+91, pool block, 6-digit tail)."""
    return f"+91{PREFIX_POOL[index % len(PREFIX_POOL)]}{100000 + index:06d}"


def planted_groups(profile: GeneratorProfile) -> list[list[str]]:
    """Contact numbers grouped by the planted cluster they rotate into."""
    groups: list[list[str]] = [[] for _ in profile.planted_clusters]
    for i in range(profile.contacts):
        groups[i % len(profile.planted_clusters)].append(contact_number(i))
    return groups


def generate(profile: GeneratorProfile) -> list[CallRecord]:
    rng = random.Random(profile.seed)

    names = []
    for i in range(profile.contacts):
        anonymous = rng.random() < UNKNOWN_NAME_SHARE
        names.append(UNKNOWN_NAME if anonymous else f"Contact-{i:03d}")

    if profile.planted_clusters:
        counts = []
        for i in range(profile.contacts):
            center, spread = profile.planted_clusters[i % len(profile.planted_clusters)]
            counts.append(max(0, center + rng.randint(-spread, spread)))
        owners = [i for i, c in enumerate(counts) for _ in range(c)]
    else:
        owners = [rng.randrange(profile.contacts) for _ in range(profile.n)]

    rows: list[list] = []  # [start, end, number, name, peer]
    for owner in owners:
        start = rng.randint(1, profile.time_span)
        missed = rng.random() < profile.missed_rate
        end = start if missed else start + rng.randint(5, MAX_TALK_SECONDS)
        outgoing = rng.random() < OUTGOING_SHARE
        if outgoing:
            rows.append([start, end, SELF_NUMBER, names[owner], contact_number(owner)])
        else:
            rows.append([start, end, contact_number(owner), names[owner], None])

    rows.sort(key=lambda r: (r[0], r[1], r[2], r[4] or ""))
    if profile.conference_rate > 0:
        anchor: list | None = None
        for row in rows:
            if anchor is not None and rng.random() < profile.conference_rate:
                row[0] = anchor[0] + rng.randint(0, 2)
                row[1] = anchor[1] + rng.randint(0, 2)
            elif row[0] != row[1]:
                anchor = row
        rows.sort(key=lambda r: (r[0], r[1], r[2], r[4] or ""))

    return [
        CallRecord(id=i, number=num, name=name, start=start, end=end, peer_number=peer)
        for i, (start, end, num, name, peer) in enumerate(rows)
    ]
