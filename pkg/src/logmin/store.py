"""Three-way partition of a call log into incoming, outgoing, and missed stores.

Classification is applied in a fixed order so the rule is total:

1. ``number == "SELF"`` puts the record in the outgoing store, even when
   its duration is zero (an unanswered outgoing call is not a missed call);
2. ``start == end`` puts the record in the missed store;
3. everything else is an answered incoming call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DuplicateId
from .ingest import CallRecord


@dataclass(frozen=True)
class LogStore:
    """The incoming (ic), outgoing (oc), and missed (mc) call partitions.

    The three tuples are pairwise disjoint by id, cover the partition input
    exactly, and each preserves input order.
    """

    ic: tuple[CallRecord, ...]
    oc: tuple[CallRecord, ...]
    mc: tuple[CallRecord, ...]

    def __iter__(self) -> Iterator[CallRecord]:
        yield from self.ic
        yield from self.oc
        yield from self.mc

    def __len__(self) -> int:
        return len(self.ic) + len(self.oc) + len(self.mc)


def partition(records: Iterable[CallRecord]) -> LogStore:
    """Split records into the three stores; ids must be unique."""
    ic: list[CallRecord] = []
    oc: list[CallRecord] = []
    mc: list[CallRecord] = []
    seen: set[int] = set()
    for record in records:
        if record.id in seen:
            raise DuplicateId(f"id {record.id} occurs more than once")
        seen.add(record.id)
        if record.outgoing:
            oc.append(record)
        elif record.start == record.end:
            mc.append(record)
        else:
            ic.append(record)
    return LogStore(tuple(ic), tuple(oc), tuple(mc))


def store_counts(store: LogStore) -> tuple[int, int, int]:
    """Sizes of the incoming, outgoing, and missed stores, in that order."""
    return len(store.ic), len(store.oc), len(store.mc)


def flatten(store: LogStore) -> list[CallRecord]:
    """All records across the three stores, in store order (ic, oc, mc)."""
    return list(store)


def union_by_id(store: LogStore) -> dict[int, CallRecord]:
    """Id-indexed view over all three stores."""
    return {record.id: record for record in store}
