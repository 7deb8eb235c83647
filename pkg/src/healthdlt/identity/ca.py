"""Certificate authorities and Ed25519 certificates.

One CA per organization (plus one for the ordering service). Certificates
are canonical-encoded bodies signed by the issuing CA's root key; the
scheme name travels inside each certificate so it can be swapped later.
Seeded key generation keeps whole-network runs reproducible in tests.
"""

from __future__ import annotations

import os
import random
import threading
from dataclasses import dataclass

from cryptography.exceptions import InvalidSignature as _CryptoInvalidSignature
from cryptography.hazmat.primitives.asymmetric.ed25519 import (
    Ed25519PrivateKey,
    Ed25519PublicKey,
)

from .. import canonical

ROLES = ("admin", "user", "peer", "orderer", "ca")

SIGNATURE_SCHEME = "ed25519"


def generate_keypair(rng: random.Random | None = None) -> tuple[bytes, bytes]:
    """Returns (private_bytes, public_bytes); rng seeds deterministic keys."""
    seed = rng.randbytes(32) if rng is not None else os.urandom(32)
    private = Ed25519PrivateKey.from_private_bytes(seed)
    return seed, private.public_key().public_bytes_raw()


def sign(private_key: bytes, message: bytes) -> bytes:
    return Ed25519PrivateKey.from_private_bytes(private_key).sign(message)


def verify(public_key: bytes, signature: bytes, message: bytes) -> bool:
    try:
        Ed25519PublicKey.from_public_bytes(public_key).verify(signature, message)
        return True
    except (_CryptoInvalidSignature, ValueError):
        return False


@dataclass
class Certificate:
    serial: int
    subject_id: str
    org: str
    role: str
    public_key: bytes
    issuer: str
    signature: bytes
    scheme: str = SIGNATURE_SCHEME

    def body_dict(self) -> dict:
        return {
            "serial": self.serial,
            "subject_id": self.subject_id,
            "org": self.org,
            "role": self.role,
            "public_key": self.public_key.hex(),
            "issuer": self.issuer,
            "scheme": self.scheme,
        }

    def to_dict(self) -> dict:
        d = self.body_dict()
        d["signature"] = self.signature.hex()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(
            serial=int(d["serial"]),
            subject_id=d["subject_id"],
            org=d["org"],
            role=d["role"],
            public_key=bytes.fromhex(d["public_key"]),
            issuer=d["issuer"],
            signature=bytes.fromhex(d["signature"]),
            scheme=d.get("scheme", SIGNATURE_SCHEME),
        )

    def verify_under(self, root_public_key: bytes) -> bool:
        if self.role not in ROLES:
            return False
        return verify(root_public_key, self.signature, canonical.encode(self.body_dict()))


class CAServer:
    """Issues and verifies member certificates for one organization."""

    def __init__(self, org_name: str, rng: random.Random | None = None):
        self.org_name = org_name
        self._root_key, root_public = generate_keypair(rng)
        self.issued_serials: set[int] = set()
        self._next_serial = 0
        self._lock = threading.Lock()
        self.root_cert = self._issue(f"ca@{org_name}", "ca", root_public)
        self.admin_enrolled = False

    def _issue(self, subject_id: str, role: str, public_key: bytes) -> Certificate:
        with self._lock:
            serial = self._next_serial
            self._next_serial += 1
            self.issued_serials.add(serial)
        body = Certificate(
            serial=serial,
            subject_id=subject_id,
            org=self.org_name,
            role=role,
            public_key=public_key,
            issuer=self.org_name,
            signature=b"",
        )
        body.signature = sign(self._root_key, canonical.encode(body.body_dict()))
        return body

    def issue(self, subject_id: str, role: str, public_key: bytes) -> Certificate:
        if role not in ROLES:
            raise ValueError(f"unknown role {role!r}")
        return self._issue(subject_id, role, public_key)

    def verify(self, cert: Certificate) -> bool:
        return cert.verify_under(self.root_cert.public_key)


def bootstrap_ca(org_name: str, rng: random.Random | None = None) -> CAServer:
    """Fresh key pair and self-signed root for one organization."""
    return CAServer(org_name, rng)


def verify_card(card_or_cert, ca_root: Certificate) -> bool:
    """Pure check: certificate chain and role under the given org root."""
    cert = getattr(card_or_cert, "certificate", card_or_cert)
    return cert.verify_under(ca_root.public_key)


def verify_cert_dict(cert_dict: dict, root_cert_dict: dict) -> bool:
    """Same check over wire-form dicts (as found in proposals and genesis)."""
    try:
        cert = Certificate.from_dict(cert_dict)
        root_public = bytes.fromhex(root_cert_dict["public_key"])
    except (KeyError, ValueError):
        return False
    return cert.verify_under(root_public)
