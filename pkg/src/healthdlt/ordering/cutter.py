"""Block cutting: turning committed transactions into signed blocks.

The leader decides the cut (count, byte, or age trigger) and appends a cut
marker to the raft log recording which committed entries the block covers,
the block timestamp, and the leader's signature over the header. Because
the marker replicates through consensus, every orderer materializes a
byte-identical block stream from its own log, and leader failover can never
produce duplicate or diverging blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

from ..envelope import Transaction
from ..ledger.blocks import MAX_BLOCK_BYTES, Block, BlockHeader, compute_data_hash, compute_block_hash


@dataclass
class BlockCutPolicy:
    max_tx_count: int = 10
    max_bytes: int = MAX_BLOCK_BYTES
    max_wait_ms: int = 500

    def validate(self) -> None:
        if self.max_tx_count <= 0 or self.max_bytes <= 0 or self.max_wait_ms <= 0:
            raise ValueError("block cut policy fields must be positive")
        if self.max_bytes > MAX_BLOCK_BYTES:
            raise ValueError(f"max_bytes may not exceed {MAX_BLOCK_BYTES}")


@dataclass
class CutMarker:
    """Consensus-replicated record of one block cut."""

    upto_index: int  # last raft log index the block covers
    timestamp: int  # ms, assigned by the cutting leader
    leader_id: str
    signature: bytes  # leader's signature over the materialized header

    def to_dict(self) -> dict:
        return {
            "upto_index": self.upto_index,
            "timestamp": self.timestamp,
            "leader_id": self.leader_id,
            "signature": self.signature.hex(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CutMarker":
        return cls(
            upto_index=int(d["upto_index"]),
            timestamp=int(d["timestamp"]),
            leader_id=d["leader_id"],
            signature=bytes.fromhex(d["signature"]),
        )


class PendingTx(NamedTuple):
    """A committed-but-uncut transaction queued for the next block."""

    log_index: int
    tx: Transaction
    seen_at: int  # tick the orderer saw it commit


def build_block(
    transactions: list[Transaction], prev_header: BlockHeader, timestamp: int
) -> Block:
    """Assemble the successor block; flags are provisional all-valid."""
    header = BlockHeader(
        number=prev_header.number + 1,
        prev_hash=compute_block_hash(prev_header),
        data_hash=compute_data_hash(transactions),
        timestamp=timestamp,
    )
    return Block(
        header=header,
        transactions=transactions,
        orderer_signature=b"",
        validity_flags=[True] * len(transactions),
    )


def _take_prefix(pending: list[PendingTx], policy: BlockCutPolicy) -> tuple[list[PendingTx], bool]:
    """Longest prefix that fits count and byte budgets.

    Returns (prefix, truncated_by_bytes). Byte budget keeps headroom for
    header/signature/flag overhead, then the exact encoded size is checked
    by the caller.
    """
    overhead = 2048
    taken: list[PendingTx] = []
    size = 0
    truncated = False
    for item in pending:
        tx_size = item.tx.encoded_size()
        if taken and size + tx_size > policy.max_bytes - overhead:
            truncated = True
            break
        if len(taken) >= policy.max_tx_count:
            break
        taken.append(item)
        size += tx_size
    return taken, truncated


def cut_block(
    pending: list[PendingTx],
    policy: BlockCutPolicy,
    prev_header: BlockHeader,
    *,
    now: int,
    timestamp: int | None = None,
    signer_id: str = "",
    sign_fn: Callable[[bytes], bytes],
) -> tuple[Block, CutMarker] | None:
    """Cut when count, bytes, or age says so; None means NotYet.

    `now` is the tick used for the age trigger; `timestamp` (default: now)
    goes into the header. The returned block is signed and final; the
    marker is what the leader feeds into the raft log so every orderer
    reproduces the same block.
    """
    if not pending:
        return None
    if timestamp is None:
        timestamp = now
    taken, truncated_by_bytes = _take_prefix(pending, policy)
    count_trigger = len(taken) >= policy.max_tx_count
    age_trigger = now - pending[0].seen_at >= policy.max_wait_ms
    if not (count_trigger or truncated_by_bytes or age_trigger):
        return None

    block = build_block([item.tx for item in taken], prev_header, timestamp=timestamp)
    while len(taken) > 1 and block.encoded_size() > policy.max_bytes:
        taken.pop()
        block = build_block([item.tx for item in taken], prev_header, timestamp=timestamp)
    signature = sign_fn(compute_block_hash(block.header))
    block.orderer_signature = signature
    marker = CutMarker(
        upto_index=taken[-1].log_index,
        timestamp=timestamp,
        leader_id=signer_id,
        signature=signature,
    )
    return block, marker
