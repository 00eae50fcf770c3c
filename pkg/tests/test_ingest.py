from __future__ import annotations

import json

import pytest
from hypothesis import given, settings

from helpers import rec, record_lists
from logmin import (
    BadHeader,
    DuplicateId,
    GeneratorProfile,
    MalformedRow,
    generate,
    parse_csv,
    parse_jsonl,
    write_csv,
    write_jsonl,
)
from logmin.ingest import UNKNOWN_NAME, parse_record


def test_parse_record_minimal():
    record, warnings = parse_record(["3", "5551234", "Ana", "100", "160"])
    assert record.id == 3
    assert record.number == "5551234"
    assert record.name == "Ana"
    assert (record.start, record.end) == (100, 160)
    assert record.peer_number is None
    assert warnings == []


def test_parse_record_swaps_reversed_timestamps():
    record, warnings = parse_record(["1", "5551234", "Ana", "500", "200"])
    assert (record.start, record.end) == (200, 500)
    assert warnings and "swapped" in warnings[0]


def test_parse_record_defaults_blank_name():
    record, _ = parse_record(["1", "5551234", "  ", "1", "2"])
    assert record.name == UNKNOWN_NAME


def test_parse_record_rejects_blank_number():
    with pytest.raises(MalformedRow):
        parse_record(["1", "", "Ana", "1", "2"])


@pytest.mark.parametrize("bad_id", ["-1", "1.5", "x", "", "1e3"])
def test_parse_record_rejects_non_integer_ids(bad_id):
    with pytest.raises(MalformedRow):
        parse_record([bad_id, "5551234", "Ana", "1", "2"])


def test_parse_record_field_count():
    with pytest.raises(MalformedRow) as exc:
        parse_record(["1", "2", "3"], line=7)
    assert "line 7" in str(exc.value)


def test_csv_round_trip(tmp_path):
    records = generate(GeneratorProfile(seed=5, n=60, conference_rate=0.3))
    path = tmp_path / "log.csv"
    write_csv(records, path)
    parsed = parse_csv(str(path))
    assert list(parsed.records) == records
    assert parsed.warnings == ()


def test_jsonl_round_trip(tmp_path):
    records = generate(GeneratorProfile(seed=5, n=60, conference_rate=0.3))
    path = tmp_path / "log.jsonl"
    write_jsonl(records, path)
    parsed = parse_jsonl(str(path))
    assert list(parsed.records) == records


def test_csv_omits_peer_column_when_unused(tmp_path):
    path = tmp_path / "log.csv"
    write_csv([rec(1, "5551234", 10, 20)], path)
    assert path.read_text().splitlines()[0] == "id,number,name,start,end"
    write_csv([rec(1, "SELF", 10, 20, peer="5551234")], path)
    assert path.read_text().splitlines()[0] == "id,number,name,start,end,peer_number"


def test_csv_rejects_bad_header(tmp_path):
    path = tmp_path / "log.csv"
    path.write_text("id,number,start,end\n")
    with pytest.raises(BadHeader):
        parse_csv(str(path))


def test_csv_rejects_empty_file(tmp_path):
    path = tmp_path / "log.csv"
    path.write_text("")
    with pytest.raises(BadHeader):
        parse_csv(str(path))


def test_csv_duplicate_ids_name_both_lines(tmp_path):
    path = tmp_path / "log.csv"
    path.write_text("id,number,name,start,end\n7,111,Ana,1,2\n7,222,Bo,3,4\n")
    with pytest.raises(DuplicateId) as exc:
        parse_csv(str(path))
    assert "lines 2 and 3" in str(exc.value)


def test_csv_reports_warning_lines(tmp_path):
    path = tmp_path / "log.csv"
    path.write_text("id,number,name,start,end\n1,111,Ana,1,2\n2,222,Bo,90,40\n")
    parsed = parse_csv(str(path))
    assert [line for line, _ in parsed.warnings] == [3]
    assert parsed.records[1].start == 40


def test_jsonl_rejects_extra_keys(tmp_path):
    path = tmp_path / "log.jsonl"
    path.write_text(json.dumps({"id": 1, "number": "1", "name": "a", "start": 1, "end": 2, "x": 0}) + "\n")
    with pytest.raises(MalformedRow):
        parse_jsonl(str(path))


def test_jsonl_rejects_missing_keys(tmp_path):
    path = tmp_path / "log.jsonl"
    path.write_text(json.dumps({"id": 1, "number": "1", "name": "a", "start": 1}) + "\n")
    with pytest.raises(MalformedRow):
        parse_jsonl(str(path))


@pytest.mark.parametrize("value", [True, 1.0, "1", None])
def test_jsonl_rejects_non_integer_numerics(tmp_path, value):
    path = tmp_path / "log.jsonl"
    path.write_text(json.dumps({"id": value, "number": "1", "name": "a", "start": 1, "end": 2}) + "\n")
    with pytest.raises(MalformedRow):
        parse_jsonl(str(path))


def test_jsonl_accepts_null_peer(tmp_path):
    path = tmp_path / "log.jsonl"
    row = {"id": 1, "number": "1", "name": "a", "start": 1, "end": 2, "peer_number": None}
    path.write_text(json.dumps(row) + "\n")
    parsed = parse_jsonl(str(path))
    assert parsed.records[0].peer_number is None


def test_jsonl_invalid_json_names_line(tmp_path):
    path = tmp_path / "log.jsonl"
    path.write_text('{"id": 1}\nnot json\n')
    with pytest.raises(MalformedRow) as exc:
        parse_jsonl(str(path))
    assert exc.value.line == 1  # the first bad row wins


@settings(max_examples=25, deadline=None)
@given(record_lists())
def test_write_parse_identity_both_formats(tmp_path_factory, records):
    base = tmp_path_factory.mktemp("roundtrip")
    csv_path, jsonl_path = base / "r.csv", base / "r.jsonl"
    write_csv(records, csv_path)
    write_jsonl(records, jsonl_path)
    assert list(parse_csv(str(csv_path)).records) == records
    assert list(parse_jsonl(str(jsonl_path)).records) == records
