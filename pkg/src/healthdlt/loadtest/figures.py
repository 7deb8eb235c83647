"""Figure rendering for load-test reports.

Three views, written as PNG files alongside the delimited output: the
request pass/fail summary, per-window throughput, and the response-time
histogram.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .apdex import ApdexReport


def render_figures(report: ApdexReport, out_dir: str, prefix: str = "loadtest") -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    paths = [
        _request_summary(report, os.path.join(out_dir, f"{prefix}-request-summary.png")),
        _throughput(report, os.path.join(out_dir, f"{prefix}-throughput.png")),
        _response_times(report, os.path.join(out_dir, f"{prefix}-response-times.png")),
    ]
    return paths


def _request_summary(report: ApdexReport, path: str) -> str:
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.pie(
        [report.pass_pct, report.fail_pct],
        labels=[f"pass {report.pass_pct:.2f}%", f"fail {report.fail_pct:.2f}%"],
        colors=["#2a9d8f", "#e76f51"],
        startangle=90,
    )
    ax.set_title(f"Request summary ({report.total} requests)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _throughput(report: ApdexReport, path: str) -> str:
    starts = [w["start_s"] for w in report.tx_windows]
    ok = [w["ok"] for w in report.tx_windows]
    fail = [w["fail"] for w in report.tx_windows]
    fig, ax = plt.subplots(figsize=(7, 4))
    width = 4.0
    ax.bar([s - width / 2 for s in starts], ok, width=width, label="success", color="#2a9d8f")
    ax.bar([s + width / 2 for s in starts], fail, width=width, label="failure", color="#e76f51")
    ax.set_xlabel("window start (s)")
    ax.set_ylabel("transactions per 10 s window")
    ax.set_title("Throughput")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _response_times(report: ApdexReport, path: str) -> str:
    labels = list(report.bucket_labels())
    counts = [report.buckets[label] for label in labels]
    display = [
        f"< {report.t_ms} ms",
        f"{report.t_ms}-{report.f_ms} ms",
        f"> {report.f_ms} ms",
        "failed",
    ]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(display, counts, color=["#2a9d8f", "#e9c46a", "#f4a261", "#e76f51"])
    ax.set_ylabel("requests")
    ax.set_title(f"Response time overview (apdex {report.apdex:.3f})")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
