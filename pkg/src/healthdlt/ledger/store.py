"""Append-only block stores and whole-chain validation.

File layout: one length-prefixed (4-byte big-endian) canonical-encoded
block per record in chain-<channel>.blocks. The in-memory store backs the
simulated peers; the file store adds durability with the same interface.
"""

from __future__ import annotations

import struct
from typing import Iterator, NamedTuple

from .. import canonical
from ..errors import ChainLinkError, HeightError, OversizeError
from .blocks import MAX_BLOCK_BYTES, Block, compute_block_hash, compute_data_hash


class ValidationReport(NamedTuple):
    valid: bool
    first_bad_height: int | None


class BlockStore:
    """Ordered, append-only list of blocks starting at genesis."""

    def __init__(self, genesis: Block | None = None):
        self._blocks: list[Block] = []
        if genesis is not None:
            self.append(genesis)

    @property
    def height(self) -> int:
        return len(self._blocks) - 1

    def __len__(self) -> int:
        return len(self._blocks)

    def __iter__(self) -> Iterator[Block]:
        return iter(self._blocks)

    def block(self, number: int) -> Block:
        return self._blocks[number]

    def tip(self) -> Block:
        return self._blocks[-1]

    def check_append(self, block: Block) -> None:
        """Validate a candidate successor without persisting it."""
        if not self._blocks:
            if block.header.number != 0:
                raise HeightError("first block must be genesis (number 0)")
            if block.header.prev_hash != canonical.ZERO_DIGEST:
                raise ChainLinkError("genesis prev_hash must be all zero")
        else:
            last = self._blocks[-1]
            if block.header.number != last.header.number + 1:
                raise HeightError(
                    f"expected number {last.header.number + 1}, got {block.header.number}"
                )
            if block.header.prev_hash != compute_block_hash(last.header):
                raise ChainLinkError(
                    f"prev_hash of block {block.header.number} does not match tip"
                )
        if block.encoded_size() > MAX_BLOCK_BYTES:
            raise OversizeError(
                f"block {block.header.number} encodes to {block.encoded_size()} bytes"
            )

    def append(self, block: Block) -> int:
        """Validate, persist, and return the new height."""
        self.check_append(block)
        self._persist(block)
        self._blocks.append(block)
        return self.height

    def _persist(self, block: Block) -> None:
        pass  # in-memory store


class FileBlockStore(BlockStore):
    """BlockStore persisted to chain-<channel>.blocks, reloaded on open."""

    def __init__(self, path: str, genesis: Block | None = None):
        self.path = path
        super().__init__()
        try:
            with open(path, "rb") as fh:
                raw = fh.read()
        except FileNotFoundError:
            raw = b""
        offset = 0
        while offset < len(raw):
            (length,) = struct.unpack(">I", raw[offset : offset + 4])
            payload = raw[offset + 4 : offset + 4 + length]
            block = Block.from_dict(canonical.decode(payload))
            # loaded records were validated when appended
            self._blocks.append(block)
            offset += 4 + length
        if genesis is not None and not self._blocks:
            self.append(genesis)

    def _persist(self, block: Block) -> None:
        payload = block.encoded()
        with open(self.path, "ab") as fh:
            fh.write(struct.pack(">I", len(payload)))
            fh.write(payload)


def append_block(ledger: BlockStore, block: Block) -> int:
    """Append a successor block; raises ChainLinkError / HeightError / OversizeError."""
    return ledger.append(block)


def validate_chain(ledger: BlockStore) -> ValidationReport:
    """Recompute every link and data hash; failures go in the report."""
    prev_hash = canonical.ZERO_DIGEST
    for block in ledger:
        header = block.header
        if header.prev_hash != prev_hash:
            return ValidationReport(False, header.number)
        if header.data_hash != compute_data_hash(block.transactions):
            return ValidationReport(False, header.number)
        prev_hash = compute_block_hash(header)
    return ValidationReport(True, None)
