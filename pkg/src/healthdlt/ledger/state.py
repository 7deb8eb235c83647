"""Versioned world state and commit-time MVCC validation.

A transaction is valid iff every key it read still has the version it read.
Valid transactions apply their writes at version (block_number, tx_index);
invalid ones stay in the block flagged invalid and write nothing. Replaying
every block from genesis over an empty state reproduces the live state
exactly.
"""

from __future__ import annotations

import os
import threading
from typing import NamedTuple

from .. import canonical
from .blocks import Block


class VersionedValue(NamedTuple):
    value: bytes
    version: tuple[int, int]


class WorldState:
    """Current key -> VersionedValue map, guarded for concurrent queries."""

    def __init__(self):
        self._entries: dict[str, VersionedValue] = {}
        self.height: int = -1  # last committed block number
        self._lock = threading.RLock()

    def get(self, key: str) -> VersionedValue | None:
        with self._lock:
            return self._entries.get(key)

    def version_of(self, key: str) -> tuple[int, int] | None:
        entry = self.get(key)
        return None if entry is None else entry.version

    def snapshot(self) -> dict[str, VersionedValue]:
        """Consistent point-in-time copy; values are immutable tuples."""
        with self._lock:
            return dict(self._entries)

    def items(self):
        with self._lock:
            return sorted(self._entries.items())

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def apply_writes(self, writes, version: tuple[int, int]) -> None:
        with self._lock:
            for key, value in writes:
                if value is None:
                    self._entries.pop(key, None)
                else:
                    self._entries[key] = VersionedValue(value, version)

    # --- persistence ---

    def to_snapshot_bytes(self) -> bytes:
        entries = {
            key: {"value": vv.value.hex(), "version": [vv.version[0], vv.version[1]]}
            for key, vv in self.items()
        }
        return canonical.encode({"height": self.height, "entries": entries})

    def save_snapshot(self, path: str) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "wb") as fh:
            fh.write(self.to_snapshot_bytes())
        os.replace(tmp, path)

    @classmethod
    def load_snapshot(cls, path: str) -> "WorldState":
        with open(path, "rb") as fh:
            doc = canonical.decode(fh.read())
        state = cls()
        state.height = int(doc["height"])
        for key, entry in doc["entries"].items():
            state._entries[key] = VersionedValue(
                bytes.fromhex(entry["value"]),
                (int(entry["version"][0]), int(entry["version"][1])),
            )
        return state


def commit_block(block: Block, state: WorldState) -> list[bool]:
    """Apply a block's transactions in order; returns per-tx validity flags.

    Invalidity is a flag, never an error: stale reads mark the transaction
    invalid and skip its writes, later transactions in the same block see
    the writes of earlier valid ones.
    """
    flags: list[bool] = []
    with state._lock:
        for index, tx in enumerate(block.transactions):
            valid = all(
                state.version_of(key) == version for key, version in tx.read_set
            )
            if valid:
                state.apply_writes(tx.write_set, (block.header.number, index))
            flags.append(valid)
        state.height = block.header.number
    block.validity_flags = list(flags)
    return flags


def query_state(state: WorldState, key: str) -> VersionedValue | None:
    """Read-only lookup; absent keys return None."""
    return state.get(key)
