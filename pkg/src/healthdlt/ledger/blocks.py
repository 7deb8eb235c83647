"""Block and header structures, hashing, and genesis construction.

The data hash chains the digests of the *complete* transactions (proposal,
endorsements, read/write sets), so any single-byte mutation of stored
transaction bytes is detectable. Validity flags are set at commit time and
are deliberately excluded from both hashes; in the canonical encoding they
are a fixed-width '0'/'1' string so flipping them never changes the encoded
block size.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import canonical
from ..envelope import Proposal, Transaction
from ..errors import EmptyConsortium

MAX_BLOCK_BYTES = 1_048_576

GENESIS_FN = "config.genesis"


@dataclass
class BlockHeader:
    number: int
    prev_hash: bytes
    data_hash: bytes
    timestamp: int  # ms since epoch, assigned by the ordering leader

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "prev_hash": canonical.hex_digest(self.prev_hash),
            "data_hash": canonical.hex_digest(self.data_hash),
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BlockHeader":
        return cls(
            number=int(d["number"]),
            prev_hash=canonical.unhex_digest(d["prev_hash"]),
            data_hash=canonical.unhex_digest(d["data_hash"]),
            timestamp=int(d["timestamp"]),
        )


def compute_block_hash(header: BlockHeader) -> bytes:
    """Digest of the canonical header encoding. Pure and deterministic."""
    return canonical.digest_of(header.to_dict())


def compute_data_hash(transactions: list[Transaction]) -> bytes:
    """SHA-256 over the ordered concatenation of transaction digests."""
    return canonical.digest(b"".join(tx.full_digest() for tx in transactions))


@dataclass
class Block:
    header: BlockHeader
    transactions: list[Transaction]
    orderer_signature: bytes
    # One flag per transaction, set at commit. Cut blocks carry all-True
    # placeholders so the encoded size is final before the cap check.
    validity_flags: list[bool] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "header": self.header.to_dict(),
            "transactions": [tx.to_dict() for tx in self.transactions],
            "orderer_signature": self.orderer_signature.hex(),
            "validity_flags": "".join("1" if f else "0" for f in self.validity_flags),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Block":
        return cls(
            header=BlockHeader.from_dict(d["header"]),
            transactions=[Transaction.from_dict(t) for t in d["transactions"]],
            orderer_signature=bytes.fromhex(d["orderer_signature"]),
            validity_flags=[c == "1" for c in d["validity_flags"]],
        )

    def encoded(self) -> bytes:
        return canonical.encode(self.to_dict())

    def encoded_size(self) -> int:
        return len(self.encoded())


@dataclass
class ConsortiumConfig:
    """What the genesis block embeds: the consortium's trust anchors."""

    channel: str
    org_root_certs: list[dict]
    orderer_root_cert: dict | None = None
    timestamp: int = 0


def create_genesis_block(consortium: ConsortiumConfig) -> Block:
    """Block 0: a single unendorsed config transaction carrying root certs.

    The config transaction writes each root certificate into world state
    under config/ keys, so peers can run membership checks straight off
    their committed state.
    """
    if not consortium.org_root_certs:
        raise EmptyConsortium("consortium must list at least one organization")

    config_body = {
        "channel": consortium.channel,
        "org_root_certs": consortium.org_root_certs,
        "orderer_root_cert": consortium.orderer_root_cert,
    }
    proposal = Proposal(
        contract_fn=GENESIS_FN,
        args=[config_body],
        invoker_cert={},
        client_signature=b"",
        nonce=canonical.digest_of(consortium.channel)[:16],
        timestamp=consortium.timestamp,
    )
    write_set: list[tuple[str, bytes | None]] = []
    for cert in consortium.org_root_certs:
        write_set.append((f"config/org/{cert['org']}", canonical.encode(cert)))
    if consortium.orderer_root_cert is not None:
        write_set.append(
            ("config/orderer-ca", canonical.encode(consortium.orderer_root_cert))
        )
    config_tx = Transaction(
        tx_id=proposal.tx_id(),
        proposal=proposal,
        endorsements=[],
        read_set=[],
        write_set=write_set,
    )
    header = BlockHeader(
        number=0,
        prev_hash=canonical.ZERO_DIGEST,
        data_hash=compute_data_hash([config_tx]),
        timestamp=consortium.timestamp,
    )
    return Block(
        header=header,
        transactions=[config_tx],
        orderer_signature=b"",
        validity_flags=[True],
    )
