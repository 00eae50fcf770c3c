"""Shared builders and strategies for the test suite."""

from __future__ import annotations

from hypothesis import strategies as st

from logmin import CallRecord

SELF = "SELF"


def rec(rec_id, number, start, end, name="Someone", peer=None):
    return CallRecord(id=rec_id, number=number, name=name, start=start, end=end, peer_number=peer)


contact_numbers = st.one_of(
    st.from_regex(r"\+91[0-9]{10}", fullmatch=True),
    st.from_regex(r"[1-9][0-9]{2,7}", fullmatch=True),
)


@st.composite
def record_lists(draw, max_size=40):
    """Valid record lists with unique sequential ids, mixing directions,
    missed calls, and optional peer numbers."""
    n = draw(st.integers(min_value=0, max_value=max_size))
    records = []
    for i in range(n):
        start = draw(st.integers(min_value=0, max_value=10**7))
        end = start if draw(st.booleans()) else start + draw(st.integers(1, 7200))
        contact = draw(contact_numbers)
        if draw(st.booleans()):
            peer = draw(st.one_of(st.none(), st.just(contact)))
            records.append(rec(i, SELF, start, end, peer=peer))
        else:
            records.append(rec(i, contact, start, end))
    return records
