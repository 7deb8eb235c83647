"""APDEX arithmetic, report rendering, figures, and small live runs."""

import http.server
import threading

import pytest
from hypothesis import given, settings, strategies as st

from healthdlt.errors import EmptyInput, TargetUnreachable
from healthdlt.loadtest import (
    Credential,
    LoadConfig,
    Sample,
    ScenarioStep,
    apdex_score,
    parse_report_csv,
    read_samples_csv,
    render_figures,
    render_report,
    run_load,
    write_samples_csv,
)


def sample(latency, ok=True, at=0, route="/x"):
    return Sample(route=route, started_at=at, latency_ms=latency, ok=ok, status_code=200 if ok else 0)


class TestApdexFormula:
    def test_all_fast_is_one(self):
        report = apdex_score([sample(100) for _ in range(50)])
        assert report.apdex == 1.0

    def test_fixed_four_sample_fixture_is_0625(self):
        samples = [sample(100), sample(200), sample(900), sample(2500)]
        report = apdex_score(samples)
        assert report.apdex == 0.625
        assert (report.satisfied, report.tolerating, report.frustrated) == (2, 1, 1)

    def test_failed_sample_is_frustrated_even_if_fast(self):
        report = apdex_score([sample(10, ok=False), sample(10)])
        assert report.frustrated == 1
        assert report.apdex == 0.5

    def test_empty_input_raises(self):
        with pytest.raises(EmptyInput):
            apdex_score([])

    def test_reported_distribution_arithmetic(self):
        """The published split: 17020 under 500 ms, 4987 to 1500 ms, 2568
        over, 934 failed, of 25509 -> 96.34% positive / 3.66% negative."""
        samples = (
            [sample(100, at=i % 60_000) for i in range(17_020)]
            + [sample(900, at=i % 60_000) for i in range(4_987)]
            + [sample(2_500, at=i % 60_000) for i in range(2_568)]
            + [sample(50, ok=False, at=i % 60_000) for i in range(934)]
        )
        report = apdex_score(samples)
        assert report.total == 25_509
        assert report.pass_pct == 96.34
        assert report.fail_pct == 3.66
        lt, mid, gt, failed = report.bucket_labels()
        assert report.buckets == {lt: 17_020, mid: 4_987, gt: 2_568, failed: 934}
        assert sum(report.buckets.values()) == report.total
        assert report.satisfied + report.tolerating + report.frustrated == report.total


samples_strategy = st.lists(
    st.builds(
        sample,
        latency=st.floats(0, 5000, allow_nan=False),
        ok=st.booleans(),
        at=st.integers(0, 120_000),
    ),
    min_size=1,
    max_size=60,
)


class TestApdexProperties:
    @settings(max_examples=300, deadline=None)
    @given(samples=samples_strategy, t=st.integers(1, 2000), df=st.integers(0, 2000))
    def test_conservation(self, samples, t, df):
        report = apdex_score(samples, t_ms=t, f_ms=t + df)
        assert report.satisfied + report.tolerating + report.frustrated == report.total
        assert sum(report.buckets.values()) == report.total
        assert sum(w["ok"] + w["fail"] for w in report.tx_windows) == report.total
        assert 0.0 <= report.apdex <= 1.0

    @settings(max_examples=300, deadline=None)
    @given(samples=samples_strategy, t=st.integers(1, 1500), dt=st.integers(0, 500), df=st.integers(0, 2000))
    def test_raising_thresholds_never_lowers_apdex(self, samples, t, dt, df):
        f = t + dt + df
        base = apdex_score(samples, t_ms=t, f_ms=f).apdex
        raised_t = apdex_score(samples, t_ms=t + dt, f_ms=f).apdex
        raised_f = apdex_score(samples, t_ms=t, f_ms=f + 100).apdex
        assert raised_t >= base
        assert raised_f >= base


class TestWindows:
    def test_empty_window_kept_as_zero_row(self):
        samples = [sample(100, at=0), sample(100, at=25_000)]
        report = apdex_score(samples)
        assert [w["start_s"] for w in report.tx_windows] == [0, 10, 20]
        assert report.tx_windows[1] == {"start_s": 10, "ok": 0, "fail": 0}


class TestRendering:
    def test_text_contains_apdex_to_three_decimals(self):
        report = apdex_score([sample(100), sample(900), sample(900), sample(2000)])
        text = render_report(report, "text")
        assert f"apdex: {report.apdex:.3f}" in text

    def test_csv_parses_back_identically(self):
        report = apdex_score(
            [sample(100, at=0), sample(900, at=11_000), sample(2_500, at=23_000), sample(10, ok=False, at=5_000)]
        )
        text = render_report(report, "csv")
        assert parse_report_csv(text) == report

    def test_samples_csv_roundtrip(self, tmp_path):
        samples = [sample(123.456, at=10), sample(9.5, ok=False, at=20, route="/y")]
        path = str(tmp_path / "samples.csv")
        write_samples_csv(samples, path)
        loaded = read_samples_csv(path)
        assert [(s.route, s.started_at, s.ok, s.status_code) for s in loaded] == [
            ("/x", 10, True, 200),
            ("/y", 20, False, 0),
        ]
        assert loaded[0].latency_ms == pytest.approx(123.456)

    def test_figures_written(self, tmp_path):
        report = apdex_score([sample(100), sample(900), sample(2000), sample(5, ok=False)])
        paths = render_figures(report, str(tmp_path))
        assert len(paths) == 3
        for path in paths:
            with open(path, "rb") as fh:
                assert fh.read(8).startswith(b"\x89PNG")


class _StubHandler(http.server.BaseHTTPRequestHandler):
    """Answers everything with a canned JSON body."""

    def log_message(self, *args):
        pass

    def _ok(self):
        body = b'{"token": "stub-token"}'
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    do_GET = do_POST = _ok


@pytest.fixture
def stub_server():
    server = http.server.ThreadingHTTPServer(("127.0.0.1", 0), _StubHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()
    server.server_close()


class TestRunLoad:
    def test_single_user_single_loop(self, stub_server):
        config = LoadConfig(
            target_base_url=stub_server,
            users=1,
            ramp_up_s=0,
            duration_s=1,
            scenario=[ScenarioStep("/medicines", "GET", 1, "Nagorik")],
            credentials={"Nagorik": [Credential("u", "p")]},
            think_ms=2000,
        )
        samples = run_load(config)
        assert [s.route for s in samples] == ["/auth/login", "/medicines"]
        assert all(s.ok for s in samples)

    def test_ramp_up_spreads_activations(self, stub_server):
        config = LoadConfig(
            target_base_url=stub_server,
            users=10,
            ramp_up_s=2,
            duration_s=3,
            scenario=[ScenarioStep("/news", "GET", 1, "Nagorik")],
            credentials={"Nagorik": [Credential("u", "p")]},
            think_ms=5000,
        )
        samples = run_load(config)
        logins = [s.started_at for s in samples if s.route == "/auth/login"]
        assert len(logins) == 10
        spread = (max(logins) - min(logins)) / 1000
        assert 1.0 <= spread <= 2.5

    def test_dead_target_all_samples_fail(self):
        config = LoadConfig(
            target_base_url="http://127.0.0.1:1",  # nothing listens there
            users=2,
            ramp_up_s=0,
            duration_s=1,
            scenario=[ScenarioStep("/news", "GET", 1, "Nagorik")],
            credentials={"Nagorik": [Credential("u", "p")]},
            think_ms=100,
        )
        samples = run_load(config)
        assert samples
        assert all(not s.ok and s.status_code == 0 for s in samples)

    def test_probe_raises_target_unreachable(self):
        config = LoadConfig(
            target_base_url="http://127.0.0.1:1",
            users=1,
            ramp_up_s=0,
            duration_s=1,
            scenario=[ScenarioStep("/news", "GET", 1, "Nagorik")],
            credentials={"Nagorik": [Credential("u", "p")]},
        )
        with pytest.raises(TargetUnreachable):
            run_load(config, probe=True)

    def test_config_file_roundtrip(self, tmp_path):
        config = LoadConfig(
            target_base_url="http://127.0.0.1:9",
            users=7,
            scenario=[ScenarioStep("/x", "POST", 2, "BMDC", {"a": 1})],
            credentials={"BMDC": [Credential("id", "pw")]},
        )
        loaded = LoadConfig.from_dict(config.to_dict())
        assert loaded == config
