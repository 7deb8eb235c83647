"""Report rendering (text and CSV) plus the sample CSV interchange format.

Sample files carry route,started_at_ms,latency_ms,ok,status rows. Report
CSVs are flat record,key,value,value2 rows that parse back into an
ApdexReport unchanged.
"""

from __future__ import annotations

import csv
import io

from .apdex import ApdexReport, Sample


def write_samples_csv(samples: list[Sample], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["route", "started_at_ms", "latency_ms", "ok", "status"])
        for s in samples:
            writer.writerow([s.route, s.started_at, f"{s.latency_ms:.3f}", int(s.ok), s.status_code])


def read_samples_csv(path: str) -> list[Sample]:
    samples = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            samples.append(
                Sample(
                    route=row["route"],
                    started_at=int(row["started_at_ms"]),
                    latency_ms=float(row["latency_ms"]),
                    ok=row["ok"] == "1",
                    status_code=int(row["status"]),
                )
            )
    return samples


def render_report(report: ApdexReport, format: str = "text") -> str:
    if format == "text":
        return _render_text(report)
    if format == "csv":
        return _render_csv(report)
    raise ValueError(f"format must be text or csv, not {format!r}")


def _render_text(report: ApdexReport) -> str:
    lt, mid, gt, failed = report.bucket_labels()
    lines = [
        "request summary",
        f"  total:      {report.total}",
        f"  pass_pct:   {report.pass_pct:.2f}%",
        f"  fail_pct:   {report.fail_pct:.2f}%",
        f"apdex: {report.apdex:.3f} (T={report.t_ms} ms, F={report.f_ms} ms)",
        f"  satisfied:  {report.satisfied}",
        f"  tolerating: {report.tolerating}",
        f"  frustrated: {report.frustrated}",
        "response times",
        f"  <= {report.t_ms} ms:          {report.buckets[lt]}",
        f"  {report.t_ms}-{report.f_ms} ms:         {report.buckets[mid]}",
        f"  > {report.f_ms} ms:          {report.buckets[gt]}",
        f"  failed:             {report.buckets[failed]}",
        "throughput (10 s windows)",
    ]
    for window in report.tx_windows:
        lines.append(
            f"  t+{window['start_s']:>4}s  ok={window['ok']:<6} fail={window['fail']}"
        )
    return "\n".join(lines) + "\n"


def _render_csv(report: ApdexReport) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["record", "key", "value", "value2"])
    for key in ("total", "satisfied", "tolerating", "frustrated", "t_ms", "f_ms"):
        writer.writerow(["summary", key, getattr(report, key), ""])
    writer.writerow(["summary", "apdex", repr(report.apdex), ""])
    writer.writerow(["summary", "pass_pct", repr(report.pass_pct), ""])
    writer.writerow(["summary", "fail_pct", repr(report.fail_pct), ""])
    for label, count in report.buckets.items():
        writer.writerow(["bucket", label, count, ""])
    for window in report.tx_windows:
        writer.writerow(["window", window["start_s"], window["ok"], window["fail"]])
    return out.getvalue()


def parse_report_csv(text: str) -> ApdexReport:
    """Inverse of render_report(..., 'csv')."""
    summary: dict[str, object] = {}
    buckets: dict[str, int] = {}
    windows: list[dict] = []
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    assert header == ["record", "key", "value", "value2"]
    for record, key, value, value2 in reader:
        if record == "summary":
            summary[key] = value
        elif record == "bucket":
            buckets[key] = int(value)
        elif record == "window":
            windows.append({"start_s": int(key), "ok": int(value), "fail": int(value2)})
    return ApdexReport(
        total=int(summary["total"]),
        satisfied=int(summary["satisfied"]),
        tolerating=int(summary["tolerating"]),
        frustrated=int(summary["frustrated"]),
        apdex=float(summary["apdex"]),
        t_ms=int(summary["t_ms"]),
        f_ms=int(summary["f_ms"]),
        buckets=buckets,
        tx_windows=windows,
        pass_pct=float(summary["pass_pct"]),
        fail_pct=float(summary["fail_pct"]),
    )
