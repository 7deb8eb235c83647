"""Hash-chained block ledger with a versioned world state."""

from .blocks import (
    MAX_BLOCK_BYTES,
    Block,
    BlockHeader,
    ConsortiumConfig,
    compute_block_hash,
    compute_data_hash,
    create_genesis_block,
)
from .state import VersionedValue, WorldState, commit_block, query_state
from .store import BlockStore, FileBlockStore, ValidationReport, append_block, validate_chain

__all__ = [
    "MAX_BLOCK_BYTES",
    "Block",
    "BlockHeader",
    "BlockStore",
    "ConsortiumConfig",
    "FileBlockStore",
    "ValidationReport",
    "VersionedValue",
    "WorldState",
    "append_block",
    "commit_block",
    "compute_block_hash",
    "compute_data_hash",
    "create_genesis_block",
    "query_state",
    "validate_chain",
]
