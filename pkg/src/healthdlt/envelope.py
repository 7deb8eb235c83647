"""Transaction envelope: proposal, endorsement, and the transaction itself.

A client proposal is signed over canonical (fn, args, nonce). Endorsing
peers execute the contract against a state snapshot and sign the digest of
(read_set, write_set, result). The assembled transaction travels through
ordering and lands in a block; its read/write sets are what commit-time
MVCC validation inspects.

Versions are (block_number, tx_index) pairs; a read of an absent key
records version None. A write of None is a tombstone (delete).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import canonical

Version = tuple[int, int]

# Single submitted transaction may not exceed the block cap on its own.
MAX_TX_BYTES = 1_048_576


def _version_to_wire(version: Version | None):
    return None if version is None else [version[0], version[1]]


def _version_from_wire(wire) -> Version | None:
    return None if wire is None else (int(wire[0]), int(wire[1]))


@dataclass
class Proposal:
    """A signed request to execute one contract function."""

    contract_fn: str
    args: list
    invoker_cert: dict
    client_signature: bytes
    nonce: bytes
    timestamp: int  # ms, client-assigned; contracts read time from here

    def signed_payload(self) -> bytes:
        """Bytes the client signs: canonical (fn, args, nonce)."""
        return canonical.encode([self.contract_fn, self.args, self.nonce.hex()])

    def to_dict(self) -> dict:
        return {
            "contract_fn": self.contract_fn,
            "args": self.args,
            "invoker_cert": self.invoker_cert,
            "client_signature": self.client_signature.hex(),
            "nonce": self.nonce.hex(),
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Proposal":
        return cls(
            contract_fn=d["contract_fn"],
            args=d["args"],
            invoker_cert=d["invoker_cert"],
            client_signature=bytes.fromhex(d["client_signature"]),
            nonce=bytes.fromhex(d["nonce"]),
            timestamp=int(d["timestamp"]),
        )

    def tx_id(self) -> bytes:
        """Digest of the canonical proposal encoding."""
        return canonical.digest_of(self.to_dict())


@dataclass
class Endorsement:
    """One peer's signed vouching for a simulated execution result."""

    endorser_cert: dict
    response_digest: bytes
    signature: bytes

    def to_dict(self) -> dict:
        return {
            "endorser_cert": self.endorser_cert,
            "response_digest": self.response_digest.hex(),
            "signature": self.signature.hex(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Endorsement":
        return cls(
            endorser_cert=d["endorser_cert"],
            response_digest=bytes.fromhex(d["response_digest"]),
            signature=bytes.fromhex(d["signature"]),
        )


def response_digest(read_set, write_set, result) -> bytes:
    """Digest an endorsing peer signs: canonical (read_set, write_set, result)."""
    return canonical.digest_of(
        {
            "read_set": [[k, _version_to_wire(v)] for k, v in read_set],
            "write_set": [[k, None if v is None else v.hex()] for k, v in write_set],
            "result": result,
        }
    )


@dataclass
class Transaction:
    """Endorsed proposal plus the read/write sets captured at endorsement."""

    tx_id: bytes
    proposal: Proposal
    endorsements: list[Endorsement]
    read_set: list[tuple[str, Version | None]]
    write_set: list[tuple[str, bytes | None]]

    def to_dict(self) -> dict:
        return {
            "tx_id": self.tx_id.hex(),
            "proposal": self.proposal.to_dict(),
            "endorsements": [e.to_dict() for e in self.endorsements],
            "read_set": [[k, _version_to_wire(v)] for k, v in self.read_set],
            "write_set": [
                [k, None if v is None else v.hex()] for k, v in self.write_set
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Transaction":
        return cls(
            tx_id=bytes.fromhex(d["tx_id"]),
            proposal=Proposal.from_dict(d["proposal"]),
            endorsements=[Endorsement.from_dict(e) for e in d["endorsements"]],
            read_set=[(k, _version_from_wire(v)) for k, v in d["read_set"]],
            write_set=[
                (k, None if v is None else bytes.fromhex(v))
                for k, v in d["write_set"]
            ],
        )

    def encoded(self) -> bytes:
        return canonical.encode(self.to_dict())

    def full_digest(self) -> bytes:
        """Digest over the complete transaction (not just the proposal).

        Block data hashes chain these so that mutating any byte of a stored
        transaction, endorsements included, breaks validation.
        """
        return canonical.digest(self.encoded())

    def encoded_size(self) -> int:
        return len(self.encoded())
