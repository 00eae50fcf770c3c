"""Chart rendering for reports, written straight to image files.

Uses the Agg backend so rendering works headless; every function writes the
file and returns nothing. Charts are deliberately plain — one axes, counts
or indices as bars — since they accompany the machine-readable output
rather than replace it.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .relevance import RelevanceSummary
from .reporter import Report

_BAR_COLOR = "#4878a8"
_ACCENT_COLOR = "#b04a4a"
_MAX_BARS = 25


def _new_axes(title: str):
    fig, ax = plt.subplots(figsize=(8, 4.5), dpi=120)
    ax.set_title(title)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    return fig, ax


def _save(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _bar_chart(title: str, labels: list[str], heights: list, path: str, ylabel: str) -> None:
    fig, ax = _new_axes(title)
    ax.bar(range(len(labels)), heights, color=_BAR_COLOR)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=7)
    ax.set_ylabel(ylabel)
    _save(fig, path)


def render_report_figure(report: Report, path: str) -> None:
    """Write the chart matching `report.kind` to `path` (format by extension)."""
    rows = list(report.rows)
    if report.kind == "FrequencyCount":
        rows = rows[:_MAX_BARS]
        _bar_chart(
            "Calls per number", [r["number"] for r in rows], [r["count"] for r in rows], path, "calls"
        )
    elif report.kind == "FrequencyCluster":
        rows = rows[:_MAX_BARS]
        fig, ax = _new_axes("Calls per number, by cluster")
        palette = plt.rcParams["axes.prop_cycle"].by_key()["color"]
        label_color = {
            c["label"]: palette[i % len(palette)] for i, c in enumerate(report.extra["clusters"])
        }
        ax.bar(
            range(len(rows)),
            [r["count"] for r in rows],
            color=[label_color[r["label"]] for r in rows],
        )
        ax.set_xticks(range(len(rows)))
        ax.set_xticklabels([r["number"] for r in rows], rotation=45, ha="right", fontsize=7)
        ax.set_ylabel("calls")
        handles = [plt.Rectangle((0, 0), 1, 1, color=color) for color in label_color.values()]
        ax.legend(handles, list(label_color), frameon=False)
        _save(fig, path)
    elif report.kind in ("CalendarMV", "CalendarWV", "CalendarDV"):
        unit = {"CalendarMV": "month", "CalendarWV": "week", "CalendarDV": "day"}[report.kind]
        _bar_chart(
            f"Calls per {unit}", [r["bucket"] for r in rows], [r["count"] for r in rows], path, "calls"
        )
    elif report.kind == "Tod":
        _bar_chart(
            "Calls by time of day", [r["section"] for r in rows], [r["count"] for r in rows], path, "calls"
        )
    elif report.kind == "Mnp":
        fig, ax = _new_axes("Porting index by provider")
        ax.bar(range(len(rows)), [r["index"] for r in rows], color=_BAR_COLOR)
        threshold = report.extra["advice"]["threshold"]
        ax.axhline(threshold, color=_ACCENT_COLOR, linestyle="--", linewidth=1, label="threshold")
        ax.set_xticks(range(len(rows)))
        ax.set_xticklabels([r["provider"] for r in rows], rotation=45, ha="right", fontsize=7)
        ax.set_ylabel("index")
        ax.legend(frameon=False)
        _save(fig, path)
    else:
        raise ValueError(f"no chart defined for report kind {report.kind!r}")


def render_relevance_figure(summary: RelevanceSummary, path: str) -> None:
    fig, ax = _new_axes("Session relevance, averaged")
    labels = ["relevant", "partial", "irrelevant"]
    values = [summary.mean_cri, summary.mean_pri, summary.mean_cii]
    ax.bar(range(3), values, color=_BAR_COLOR)
    ax.set_xticks(range(3))
    ax.set_xticklabels(labels)
    ax.set_ylabel("mean % of calls")
    ax.axhline(summary.cumulative, color=_ACCENT_COLOR, linestyle="--", linewidth=1)
    ax.annotate(
        f"cumulative {summary.cumulative:.2f}",
        xy=(0.98, summary.cumulative),
        xycoords=("axes fraction", "data"),
        ha="right",
        va="bottom",
        fontsize=8,
        color=_ACCENT_COLOR,
    )
    _save(fig, path)
