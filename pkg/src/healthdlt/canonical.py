"""Canonical encoding and digests.

Every hash in the system is SHA-256 over this encoding: field-ordered JSON
with no insignificant whitespace, UTF-8 bytes, and binary fields carried as
lowercase hex strings. Two processes encoding the same value must produce
identical bytes, so block hashes and endorsement digests are reproducible
across nodes and languages.
"""

from __future__ import annotations

import hashlib
import json

DIGEST_SIZE = 32
ZERO_DIGEST = b"\x00" * DIGEST_SIZE


def encode(value) -> bytes:
    """Encode a JSON-compatible value into its canonical byte form."""
    return json.dumps(
        value, sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def decode(data: bytes):
    """Inverse of encode()."""
    return json.loads(data.decode("utf-8"))


def digest(data: bytes) -> bytes:
    """SHA-256 digest of raw bytes."""
    return hashlib.sha256(data).digest()


def digest_of(value) -> bytes:
    """SHA-256 digest of a value's canonical encoding."""
    return digest(encode(value))


def hex_digest(raw: bytes) -> str:
    """Lowercase-hex rendering used wherever a digest appears inside JSON."""
    if len(raw) != DIGEST_SIZE:
        raise ValueError(f"digest must be {DIGEST_SIZE} bytes, got {len(raw)}")
    return raw.hex()


def unhex_digest(text: str) -> bytes:
    raw = bytes.fromhex(text)
    if len(raw) != DIGEST_SIZE:
        raise ValueError(f"digest must be {DIGEST_SIZE} bytes, got {len(raw)}")
    return raw
