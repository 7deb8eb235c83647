"""APDEX scoring: (satisfied + tolerating/2) / total.

Thresholds: T (satisfied at or under) and F (tolerating at or under,
frustrated above). Failed requests always count as frustrated. Buckets
mirror the report's latency histogram; the throughput series aggregates
successes and failures per 10-second window, keeping empty windows.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import EmptyInput

WINDOW_MS = 10_000


@dataclass
class Sample:
    route: str
    started_at: int  # ms relative to run start
    latency_ms: float
    ok: bool
    status_code: int


@dataclass
class ApdexReport:
    total: int
    satisfied: int
    tolerating: int
    frustrated: int
    apdex: float
    t_ms: int
    f_ms: int
    buckets: dict[str, int]
    tx_windows: list[dict]  # {"start_s", "ok", "fail"}
    pass_pct: float
    fail_pct: float

    def bucket_labels(self) -> tuple[str, str, str, str]:
        return bucket_labels(self.t_ms, self.f_ms)


def bucket_labels(t_ms: int, f_ms: int) -> tuple[str, str, str, str]:
    return (f"lt_{t_ms}", f"between_{t_ms}_{f_ms}", f"gt_{f_ms}", "failed")


def apdex_score(samples: list[Sample], t_ms: int = 500, f_ms: int = 1500) -> ApdexReport:
    if not samples:
        raise EmptyInput("no samples to analyze")
    if t_ms <= 0 or f_ms < t_ms:
        raise ValueError("thresholds must satisfy 0 < T <= F")

    satisfied = tolerating = slow = failed = 0
    for sample in samples:
        if not sample.ok:
            failed += 1
        elif sample.latency_ms <= t_ms:
            satisfied += 1
        elif sample.latency_ms <= f_ms:
            tolerating += 1
        else:
            slow += 1
    total = len(samples)
    frustrated = slow + failed
    lt, mid, gt, fail_label = bucket_labels(t_ms, f_ms)
    buckets = {lt: satisfied, mid: tolerating, gt: slow, fail_label: failed}

    last_window = max(s.started_at for s in samples) // WINDOW_MS
    windows = [{"start_s": w * 10, "ok": 0, "fail": 0} for w in range(last_window + 1)]
    for sample in samples:
        window = windows[sample.started_at // WINDOW_MS]
        window["ok" if sample.ok else "fail"] += 1

    ok_count = total - failed
    return ApdexReport(
        total=total,
        satisfied=satisfied,
        tolerating=tolerating,
        frustrated=frustrated,
        apdex=(satisfied + tolerating / 2) / total,
        t_ms=t_ms,
        f_ms=f_ms,
        buckets=buckets,
        tx_windows=windows,
        pass_pct=round(ok_count / total * 100, 2),
        fail_pct=round(failed / total * 100, 2),
    )
