from __future__ import annotations

import pytest

from helpers import rec
from logmin import MiningConfig, partition

A = "+919810000001"
B = "5551234"


@pytest.fixture
def tiny_records():
    """Six calls over two contacts: an aligned pair (ids 1 and 5), a missed
    incoming call, and a missed outgoing call with no peer recorded."""
    return [
        rec(1, A, 1000, 1600),
        rec(2, "SELF", 2000, 2300, peer=A),
        rec(3, B, 1002, 1002),
        rec(4, B, 5000, 5400),
        rec(5, A, 1003, 1601),
        rec(6, "SELF", 9000, 9000),
    ]


@pytest.fixture
def tiny_store(tiny_records):
    return partition(tiny_records)


@pytest.fixture
def base_config():
    return MiningConfig(t_r=0)
