"""Call-log mining: partition a phone's log, extract per-call features,
cluster contact frequencies, and build calendar, time-of-day, and
provider-porting reports — all deterministic for a given seed."""

from .cluster import Clustering, FeaturePoint, brute_force_optimal, kmeans, label_clusters
from .errors import (
    BadHeader,
    BadPrefixTable,
    BadScore,
    DuplicateId,
    EmptyInput,
    LogMinError,
    MalformedRow,
    NotOrderable,
    OracleTooLarge,
    TooManyClusters,
)
from .ingest import CallRecord, ParseReport, parse_csv, parse_jsonl, write_csv, write_jsonl
from .miner import (
    MiningConfig,
    ParamVector,
    compute_boundary,
    compute_conference_count,
    compute_duration,
    compute_frequency,
    compute_tod,
    mine_store,
    record_key,
)
from .providers import PrefixTable, empty_table, load_prefix_table, resolve_provider
from .relevance import RelevanceSummary, SessionScore, load_sessions_csv, summarize
from .reporter import (
    MnpAdvice,
    Report,
    calendar_report,
    canonical_json,
    frequency_report,
    mnp_report,
    render,
    report_from_json,
    tod_report,
)
from .store import LogStore, partition
from .synth import GeneratorProfile, generate

__version__ = "0.1.0"

__all__ = [
    "BadHeader",
    "BadPrefixTable",
    "BadScore",
    "CallRecord",
    "Clustering",
    "DuplicateId",
    "EmptyInput",
    "FeaturePoint",
    "GeneratorProfile",
    "LogMinError",
    "LogStore",
    "MalformedRow",
    "MiningConfig",
    "MnpAdvice",
    "NotOrderable",
    "OracleTooLarge",
    "ParamVector",
    "ParseReport",
    "PrefixTable",
    "RelevanceSummary",
    "Report",
    "SessionScore",
    "TooManyClusters",
    "brute_force_optimal",
    "calendar_report",
    "canonical_json",
    "compute_boundary",
    "compute_conference_count",
    "compute_duration",
    "compute_frequency",
    "compute_tod",
    "empty_table",
    "frequency_report",
    "generate",
    "kmeans",
    "label_clusters",
    "load_prefix_table",
    "load_sessions_csv",
    "mine_store",
    "mnp_report",
    "parse_csv",
    "parse_jsonl",
    "partition",
    "record_key",
    "render",
    "report_from_json",
    "resolve_provider",
    "summarize",
    "tod_report",
    "write_csv",
    "write_jsonl",
]
