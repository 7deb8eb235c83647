"""Digital health cards and the wallet that holds them.

The wallet lives on the gateway host (users authenticate with identity and
password; their keys never leave the server). File-backed wallets keep one
canonical-encoded card per identity under wallet/<org>/<identity_id>.card
with owner-only permissions.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from .. import canonical
from ..errors import AlreadyBootstrapped, DuplicateIdentity
from .ca import CAServer, Certificate, generate_keypair, sign, verify

CARD_FILE_MODE = 0o600


@dataclass
class HealthCard:
    """Identity wallet entry: certificate plus its private key."""

    identity_id: str
    certificate: Certificate
    private_key: bytes
    org: str
    role: str

    def sign(self, message: bytes) -> bytes:
        return sign(self.private_key, message)

    def self_consistent(self) -> bool:
        """Sign/verify round-trip between the card's key pair."""
        probe = b"healthcard-roundtrip"
        return (
            self.certificate.subject_id == self.identity_id
            and verify(self.certificate.public_key, self.sign(probe), probe)
        )

    def to_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "certificate": self.certificate.to_dict(),
            "private_key": self.private_key.hex(),
            "org": self.org,
            "role": self.role,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HealthCard":
        return cls(
            identity_id=d["identity_id"],
            certificate=Certificate.from_dict(d["certificate"]),
            private_key=bytes.fromhex(d["private_key"]),
            org=d["org"],
            role=d["role"],
        )


class Wallet:
    """In-memory identity_id -> HealthCard map; at most one card per id."""

    def __init__(self):
        self._cards: dict[str, HealthCard] = {}

    def add(self, card: HealthCard) -> None:
        if card.identity_id in self._cards:
            raise DuplicateIdentity(card.identity_id)
        self._store(card)
        self._cards[card.identity_id] = card

    def get(self, identity_id: str) -> HealthCard | None:
        return self._cards.get(identity_id)

    def __contains__(self, identity_id: str) -> bool:
        return identity_id in self._cards

    def __len__(self) -> int:
        return len(self._cards)

    def _store(self, card: HealthCard) -> None:
        pass


class FileWallet(Wallet):
    """Wallet persisted under <root>/<org>/<identity_id>.card (mode 0600)."""

    def __init__(self, root: str):
        super().__init__()
        self.root = root
        os.makedirs(root, exist_ok=True)
        for org in sorted(os.listdir(root)):
            org_dir = os.path.join(root, org)
            if not os.path.isdir(org_dir):
                continue
            for name in sorted(os.listdir(org_dir)):
                if not name.endswith(".card"):
                    continue
                with open(os.path.join(org_dir, name), "rb") as fh:
                    card = HealthCard.from_dict(canonical.decode(fh.read()))
                self._cards[card.identity_id] = card

    def _store(self, card: HealthCard) -> None:
        if "/" in card.identity_id or "/" in card.org:
            raise ValueError("identity_id and org must not contain '/'")
        org_dir = os.path.join(self.root, card.org)
        os.makedirs(org_dir, exist_ok=True)
        path = os.path.join(org_dir, f"{card.identity_id}.card")
        with open(path, "wb") as fh:
            fh.write(canonical.encode(card.to_dict()))
        os.chmod(path, CARD_FILE_MODE)


def enroll_default_admin(ca: CAServer, rng: random.Random | None = None) -> HealthCard:
    """One admin@<org> card per organization, issued exactly once."""
    if ca.admin_enrolled:
        raise AlreadyBootstrapped(ca.org_name)
    private_key, public_key = generate_keypair(rng)
    identity_id = f"admin@{ca.org_name}"
    cert = ca.issue(identity_id, "admin", public_key)
    ca.admin_enrolled = True
    return HealthCard(
        identity_id=identity_id,
        certificate=cert,
        private_key=private_key,
        org=ca.org_name,
        role="admin",
    )


def export_certificate(cert: Certificate, path: str) -> None:
    """Write a certificate as a canonical-encoded .cert file."""
    with open(path, "wb") as fh:
        fh.write(canonical.encode(cert.to_dict()))
