from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rec, record_lists
from logmin import (
    MiningConfig,
    PrefixTable,
    compute_boundary,
    compute_conference_count,
    compute_duration,
    compute_frequency,
    compute_tod,
    empty_table,
    mine_store,
    partition,
    record_key,
)
from logmin.miner import THIRTY_DAYS, params_as_rows


def test_tod_is_floored_midpoint():
    assert compute_tod(rec(1, "1", 10, 21)) == 15
    assert compute_tod(rec(1, "1", 10, 10)) == 10


def test_duration_tolerates_reversed_fields():
    assert compute_duration(rec(1, "1", 10, 70)) == 60
    assert compute_duration(rec(1, "1", 70, 10)) == 60


def test_record_key_uses_peer_for_outgoing():
    assert record_key(rec(1, "555", 0, 1)) == "555"
    assert record_key(rec(1, "SELF", 0, 1, peer="555")) == "555"
    assert record_key(rec(1, "SELF", 0, 1)) == "SELF"


def test_frequency_cutoff_is_strict():
    calls = [rec(i, "555", start, start + 10) for i, start in enumerate([100, 200, 300])]
    assert compute_frequency(calls, "555", 99) == 3
    assert compute_frequency(calls, "555", 100) == 2  # start == t_r does not count
    assert compute_frequency(calls, "555", 300) == 0
    assert compute_frequency(calls, "999", 0) == 0


def test_boundary_window_is_inclusive():
    subject = rec(0, "1", 1000, 1100)
    others = [
        rec(1, "2", 900, 950),    # exactly start - t_p
        rec(2, "2", 1200, 1300),  # exactly end + t_f
        rec(3, "2", 899, 950),    # one second early
        rec(4, "2", 1201, 1300),  # one second late
    ]
    got = compute_boundary([subject] + others, subject, t_p=100, t_f=100)
    assert got == {1, 2}


def test_boundary_excludes_subject():
    subject = rec(0, "1", 1000, 1100)
    assert compute_boundary([subject], subject, t_p=10**6, t_f=10**6) == set()


def test_conference_needs_both_ends_aligned():
    subject = rec(0, "1", 1000, 1600)
    aligned = rec(1, "2", 1003, 1601)
    start_only = rec(2, "2", 1002, 1700)
    end_only = rec(3, "2", 1100, 1602)
    got = compute_conference_count([subject, aligned, start_only, end_only], subject, epsilon=5)
    assert got == 1


def test_mine_store_tiny_log(tiny_store, base_config):
    params = mine_store(tiny_store, base_config, empty_table())
    assert set(params) == {1, 2, 3, 4, 5, 6}
    # ids 1 and 5 are the aligned pair
    assert params[1].conference_count == 1
    assert params[5].conference_count == 1
    assert params[3].conference_count == 0
    # contact A appears twice in IC (ids 1 and 5), once in OC (id 2)
    assert params[1].frequency == 2
    assert params[2].frequency == 1
    # boundary of id 3 (start 1002) with defaults takes in the burst around t=1000-2300
    assert params[3].boundary == frozenset({1, 2, 5})


def test_provider_wiring(tiny_store, base_config):
    table = PrefixTable({"9810": "AlphaTel"})
    params = mine_store(tiny_store, base_config, table, current_provider="HomeNet")
    assert params[1].provider == "AlphaTel"  # +919810... via country strip
    assert params[2].provider == "HomeNet"  # outgoing rows carry the caller's own provider
    assert params[4].provider == "UNKNOWN"


def test_config_resolves_reference_time():
    config = MiningConfig()
    resolved = config.resolve([rec(1, "1", 0, THIRTY_DAYS + 500)])
    assert resolved.t_r == 500
    assert config.resolve([rec(1, "1", 0, 10)]).t_r == 0
    assert config.resolve([]).t_r == 0
    assert MiningConfig(t_r=77).resolve([]).t_r == 77


@pytest.mark.parametrize(
    "kwargs",
    [
        {"t_r": -1},
        {"t_p": -1},
        {"epsilon": -1},
        {"k": 0},
        {"lambda_": 1.5},
        {"port_threshold": 0.0},
        {"tod_boundaries": (5, 12)},
        {"tod_boundaries": (12, 5, 18)},
        {"tod_boundaries": (5, 12, 24)},
        {"seed": -3},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        MiningConfig(**kwargs)


def test_config_echo_round_trips_the_knobs():
    echo = MiningConfig(t_r=9, lambda_=0.25).echo()
    assert echo["t_r"] == 9
    assert echo["lambda"] == 0.25
    assert echo["tod_boundaries"] == [5, 12, 18]


def test_params_as_rows_ordering(tiny_store, base_config):
    rows = params_as_rows(mine_store(tiny_store, base_config, empty_table()))
    assert [row["record_id"] for row in rows] == [1, 2, 3, 4, 5, 6]
    assert all(row["boundary"] == sorted(row["boundary"]) for row in rows)


window_settings = st.tuples(
    st.integers(0, 5000), st.integers(0, 5000), st.integers(0, 60)
)


@settings(max_examples=60, deadline=None)
@given(record_lists(), window_settings, st.integers(0, 10**7))
def test_mine_store_matches_per_record_scans(records, windows, t_r):
    """The windowed miner and the plain per-record scans are independent
    routes to the same numbers; they must agree on any log."""
    t_p, t_f, epsilon = windows
    store = partition(records)
    config = MiningConfig(t_r=t_r, t_p=t_p, t_f=t_f, epsilon=epsilon)
    params = mine_store(store, config, empty_table())
    assert set(params) == {r.id for r in records}
    for store_slice in (store.ic, store.oc, store.mc):
        for r in store_slice:
            p = params[r.id]
            assert p.tod == compute_tod(r)
            assert p.duration == compute_duration(r)
            assert p.frequency == compute_frequency(store_slice, record_key(r), t_r)
            assert p.boundary == frozenset(compute_boundary(records, r, t_p, t_f))
            assert p.conference_count == compute_conference_count(records, r, epsilon)
