"""Contract execution context: snapshot reads, buffered writes, rw-sets.

Execution is a pure function of (state snapshot, arguments, invoker): the
stub records the version of every key read and buffers writes without
touching the snapshot, so identical inputs always yield identical read and
write sets. That determinism is what makes endorsements from different
anchor peers comparable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .. import canonical
from ..envelope import Version
from ..errors import ChaincodeError
from ..ledger.state import VersionedValue


@dataclass
class InvokerContext:
    """Verified identity facts the contract sees about its caller."""

    identity_id: str
    org: str
    cert_role: str  # admin | user | peer | orderer
    stakeholder: str | None  # authority | doctor | nagorik
    timestamp: int  # ms, from the signed proposal
    tx_seed: str  # hex of the proposal digest; source of deterministic ids

    def new_id(self, prefix: str) -> str:
        return f"{prefix}:{self.tx_seed[:16]}"


class ChaincodeStub:
    """Key-value view over one state snapshot with rw-set capture."""

    def __init__(self, snapshot: dict[str, VersionedValue]):
        self._snapshot = snapshot
        self._reads: dict[str, Version | None] = {}
        self._writes: dict[str, bytes | None] = {}

    def get(self, key: str) -> dict | None:
        if key in self._writes:
            raw = self._writes[key]
            return None if raw is None else canonical.decode(raw)
        entry = self._snapshot.get(key)
        self._reads.setdefault(key, None if entry is None else entry.version)
        return None if entry is None else canonical.decode(entry.value)

    def put(self, key: str, value: dict) -> None:
        self._writes[key] = canonical.encode(value)

    def delete(self, key: str) -> None:
        self._writes[key] = None

    def scan(self, prefix: str) -> list[tuple[str, dict]]:
        """All live entries under a key prefix, sorted by key.

        Reads of returned committed keys are recorded; buffered writes of
        this invocation shadow the snapshot.
        """
        keys = set(k for k in self._snapshot if k.startswith(prefix))
        keys.update(k for k in self._writes if k.startswith(prefix))
        out: list[tuple[str, dict]] = []
        for key in sorted(keys):
            if key in self._writes:
                raw = self._writes[key]
                if raw is not None:
                    out.append((key, canonical.decode(raw)))
                continue
            entry = self._snapshot[key]
            self._reads.setdefault(key, entry.version)
            out.append((key, canonical.decode(entry.value)))
        return out

    @property
    def read_set(self) -> list[tuple[str, Version | None]]:
        return sorted(self._reads.items())

    @property
    def write_set(self) -> list[tuple[str, bytes | None]]:
        return list(self._writes.items())


class ExecutionResult(NamedTuple):
    result: object
    read_set: list[tuple[str, Version | None]]
    write_set: list[tuple[str, bytes | None]]


def execute(
    fn: str,
    args: list,
    ctx: InvokerContext,
    snapshot: dict[str, VersionedValue],
) -> ExecutionResult:
    """Run one contract function against a snapshot; never mutates it."""
    from .registry import REGISTRY, check_authorized  # late import: registry imports handlers

    handler = REGISTRY.get(fn)
    if handler is None:
        raise ChaincodeError(f"unknown contract function {fn!r}")
    check_authorized(fn, ctx)
    stub = ChaincodeStub(snapshot)
    try:
        result = handler(ctx, stub, *args)
    except TypeError as exc:
        raise ChaincodeError(f"bad arguments for {fn}: {exc}") from exc
    return ExecutionResult(result, stub.read_set, stub.write_set)
