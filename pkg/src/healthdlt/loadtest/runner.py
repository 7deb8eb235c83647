"""Concurrent virtual users against the gateway HTTP API.

User i activates at i * (ramp_up / users) seconds; each user logs in with
a credential for its role, then loops weighted scenario steps until the
run deadline. Every request becomes one Sample; transport failures are
samples with ok=False and status 0, never exceptions.
"""

from __future__ import annotations

import http.client
import json
import random
import threading
import time
from dataclasses import dataclass, field
from urllib.parse import urlparse

from .. import canonical
from ..errors import TargetUnreachable
from .apdex import Sample

DEFAULT_THINK_MS = 100


@dataclass
class ScenarioStep:
    route: str
    method: str = "GET"
    weight: int = 1
    role: str = "Nagorik"
    body: dict | None = None

    def to_dict(self) -> dict:
        return {
            "route": self.route,
            "method": self.method,
            "weight": self.weight,
            "role": self.role,
            "body": self.body,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioStep":
        return cls(
            route=d["route"],
            method=d.get("method", "GET"),
            weight=int(d.get("weight", 1)),
            role=d.get("role", "Nagorik"),
            body=d.get("body"),
        )


@dataclass
class Credential:
    identity_id: str
    password: str


@dataclass
class LoadConfig:
    target_base_url: str
    users: int = 100
    ramp_up_s: int = 10
    duration_s: int = 60
    scenario: list[ScenarioStep] = field(default_factory=list)
    credentials: dict[str, list[Credential]] = field(default_factory=dict)
    think_ms: int = DEFAULT_THINK_MS
    seed: int = 0

    def validate(self) -> None:
        if self.users < 1:
            raise ValueError("users must be >= 1")
        if self.ramp_up_s < 0:
            raise ValueError("ramp_up_s must be >= 0")
        if not self.scenario:
            raise ValueError("scenario must list at least one step")

    def to_dict(self) -> dict:
        return {
            "target_base_url": self.target_base_url,
            "users": self.users,
            "ramp_up_s": self.ramp_up_s,
            "duration_s": self.duration_s,
            "scenario": [s.to_dict() for s in self.scenario],
            "credentials": {
                role: [{"identity_id": c.identity_id, "password": c.password} for c in creds]
                for role, creds in self.credentials.items()
            },
            "think_ms": self.think_ms,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LoadConfig":
        return cls(
            target_base_url=d["target_base_url"],
            users=int(d.get("users", 100)),
            ramp_up_s=int(d.get("ramp_up_s", 10)),
            duration_s=int(d.get("duration_s", 60)),
            scenario=[ScenarioStep.from_dict(s) for s in d.get("scenario", [])],
            credentials={
                role: [Credential(c["identity_id"], c["password"]) for c in creds]
                for role, creds in d.get("credentials", {}).items()
            },
            think_ms=int(d.get("think_ms", DEFAULT_THINK_MS)),
            seed=int(d.get("seed", 0)),
        )


def default_scenario() -> list[ScenarioStep]:
    """The two stock user types: citizens browsing plus the occasional
    complaint, the authority checking analytics and posting news."""
    return [
        ScenarioStep("/medicines", "GET", 3, "Nagorik"),
        ScenarioStep("/news", "GET", 3, "Nagorik"),
        ScenarioStep("/specialists?specialty=cardiology", "GET", 2, "Nagorik"),
        ScenarioStep(
            "/complaints",
            "POST",
            1,
            "Nagorik",
            {"subject": "service delay", "body": "load probe", "severity": "low"},
        ),
        ScenarioStep("/medicines", "GET", 2, "BMDC"),
        ScenarioStep("/analytics/stats?group_by=specialty", "GET", 2, "BMDC"),
        ScenarioStep("/news", "GET", 2, "BMDC"),
        ScenarioStep("/news", "POST", 1, "BMDC", {"title": "notice", "body": "load probe"}),
    ]


class _HttpUser:
    def __init__(self, index: int, role: str, credential: Credential, config: LoadConfig, rng: random.Random):
        self.index = index
        self.role = role
        self.credential = credential
        self.config = config
        self.rng = rng
        parsed = urlparse(config.target_base_url)
        self.host = parsed.hostname or "127.0.0.1"
        self.port = parsed.port or 80
        self.conn: http.client.HTTPConnection | None = None
        self.token: str | None = None
        self.steps = [s for s in config.scenario if s.role == role]
        self.weights = [s.weight for s in self.steps]

    def _connect(self):
        if self.conn is None:
            self.conn = http.client.HTTPConnection(self.host, self.port, timeout=30)

    def _request(self, method: str, path: str, body: dict | None) -> tuple[float, bool, int, bytes]:
        payload = canonical.encode(body) if body is not None else None
        headers = {"Content-Type": "application/json"}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        started = time.monotonic()
        try:
            self._connect()
            self.conn.request(method, path, body=payload, headers=headers)
            response = self.conn.getresponse()
            data = response.read()
            latency = (time.monotonic() - started) * 1000
            return latency, response.status < 400, response.status, data
        except Exception:
            latency = (time.monotonic() - started) * 1000
            if self.conn is not None:
                self.conn.close()
                self.conn = None
            return latency, False, 0, b""

    def run(self, started_at: float, deadline: float, sink, sink_lock):
        activation = started_at + self.index * (self.config.ramp_up_s / self.config.users)
        delay = activation - time.monotonic()
        if delay > 0:
            time.sleep(delay)
        while time.monotonic() < deadline:
            if self.token is None:
                self._login(started_at, sink, sink_lock)
                continue
            step = self.rng.choices(self.steps, weights=self.weights, k=1)[0]
            rel_start = int((time.monotonic() - started_at) * 1000)
            latency, ok, status, _ = self._request(step.method, step.route, step.body)
            with sink_lock:
                sink.append(Sample(step.route, rel_start, latency, ok, status))
            if self.config.think_ms:
                time.sleep(self.config.think_ms / 1000.0)

    def _login(self, started_at: float, sink, sink_lock):
        rel_start = int((time.monotonic() - started_at) * 1000)
        latency, ok, status, data = self._request(
            "POST",
            "/auth/login",
            {"identity_id": self.credential.identity_id, "password": self.credential.password},
        )
        with sink_lock:
            sink.append(Sample("/auth/login", rel_start, latency, ok, status))
        if ok:
            try:
                self.token = json.loads(data)["token"]
            except (ValueError, KeyError):
                self.token = None
        else:
            time.sleep(0.5)


def probe_target(base_url: str) -> None:
    parsed = urlparse(base_url)
    try:
        conn = http.client.HTTPConnection(parsed.hostname, parsed.port or 80, timeout=5)
        conn.request("GET", "/health")
        conn.getresponse().read()
        conn.close()
    except Exception as exc:
        raise TargetUnreachable(f"{base_url}: {exc}") from exc


def run_load(config: LoadConfig, probe: bool = False) -> list[Sample]:
    """Drive the configured users; returns every collected sample."""
    config.validate()
    if probe:
        probe_target(config.target_base_url)

    roles = sorted({s.role for s in config.scenario})
    users: list[_HttpUser] = []
    for i in range(config.users):
        role = roles[i % len(roles)]
        creds = config.credentials.get(role, [])
        if not creds:
            raise ValueError(f"no credentials configured for role {role!r}")
        credential = creds[i % len(creds)]
        users.append(_HttpUser(i, role, credential, config, random.Random(config.seed * 7919 + i)))

    sink: list[Sample] = []
    sink_lock = threading.Lock()
    started_at = time.monotonic()
    deadline = started_at + config.duration_s
    threads = [
        threading.Thread(target=u.run, args=(started_at, deadline, sink, sink_lock), daemon=True)
        for u in users
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join(timeout=config.duration_s + config.ramp_up_s + 60)
    for user in users:
        if user.conn is not None:
            user.conn.close()
    sink.sort(key=lambda s: s.started_at)
    return sink
