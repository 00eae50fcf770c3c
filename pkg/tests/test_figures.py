from __future__ import annotations

import pytest

from logmin.figures import render_relevance_figure, render_report_figure
from logmin.relevance import RelevanceSummary
from logmin.reporter import Report


def _report(kind: str, rows, extra=None) -> Report:
    return Report(kind=kind, generated_at=0, config_echo={}, rows=tuple(rows),
                  extra=extra or {})


def _sample(kind: str) -> Report:
    if kind == "FrequencyCount":
        return _report(kind, [{"number": "111", "count": 3}, {"number": "222", "count": 1}])
    if kind == "FrequencyCluster":
        return _report(
            kind,
            [
                {"number": "111", "count": 3, "label": "L1"},
                {"number": "222", "count": 1, "label": "L2"},
            ],
            extra={
                "clusters": [
                    {"label": "L1", "centroid": 3.0, "size": 1},
                    {"label": "L2", "centroid": 1.0, "size": 1},
                ]
            },
        )
    if kind.startswith("Calendar"):
        return _report(kind, [{"bucket": "2013-05", "count": 2}, {"bucket": "2013-06", "count": 1}])
    if kind == "Tod":
        return _report(
            kind,
            [
                {"section": "MR", "count": 1, "share": 0.25},
                {"section": "AR", "count": 3, "share": 0.75},
                {"section": "ER", "count": 0, "share": 0.0},
            ],
        )
    if kind == "Mnp":
        return _report(
            kind,
            [
                {"provider": "P2", "index": 0.8, "calls": 8, "duration": 400},
                {"provider": "P1", "index": 0.2, "calls": 2, "duration": 100},
            ],
            extra={
                "advice": {
                    "advised": True,
                    "best_alternative": "P2",
                    "threshold": 0.5,
                    "current_provider": "P1",
                    "mode": "peer",
                }
            },
        )
    raise AssertionError(kind)


@pytest.mark.parametrize(
    "kind",
    ["FrequencyCount", "FrequencyCluster", "CalendarMV", "CalendarWV", "CalendarDV",
     "Tod", "Mnp"],
)
def test_every_kind_renders_a_png(kind, tmp_path):
    path = tmp_path / f"{kind}.png"
    render_report_figure(_sample(kind), str(path))
    assert path.stat().st_size > 1000


def test_unknown_kind_is_rejected(tmp_path):
    with pytest.raises(ValueError):
        render_report_figure(_report("Sideways", []), str(tmp_path / "x.png"))


def test_relevance_chart(tmp_path):
    summary = RelevanceSummary(mean_cri=88.29, mean_pri=8.23, mean_cii=3.48,
                               cumulative=96.52)
    path = tmp_path / "relevance.png"
    render_relevance_figure(summary, str(path))
    assert path.stat().st_size > 1000
