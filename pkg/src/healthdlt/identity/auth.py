"""User registration records and the login flow.

Login follows the fixed flowchart: identity missing from the wallet is
"Invalid Identity"; a stored digest mismatch is "Invalid Password";
otherwise access is granted with a fresh session token. Exactly those
three outcomes exist.

Passwords are never stored: world state holds a salted PBKDF2-SHA256
digest (10,000 iterations) under identity/<org>/<identity_id>.
"""

from __future__ import annotations

import hashlib
import os
import random
import secrets
from dataclasses import dataclass
from typing import Callable

from .. import canonical
from ..errors import AuthorizationError, DuplicateIdentity, InvalidIdentity, InvalidPassword
from .ca import CAServer, generate_keypair, verify_card
from .wallet import HealthCard, Wallet

PBKDF2_ITERATIONS = 10_000


def identity_key(org: str, identity_id: str) -> str:
    return f"identity/{org}/{identity_id}"


def hash_password(password: str, salt: bytes | None = None) -> dict:
    if salt is None:
        salt = os.urandom(16)
    digest = hashlib.pbkdf2_hmac(
        "sha256", password.encode("utf-8"), salt, PBKDF2_ITERATIONS
    )
    return {
        "algo": "pbkdf2-sha256",
        "iterations": PBKDF2_ITERATIONS,
        "salt": salt.hex(),
        "digest": digest.hex(),
    }


def password_matches(password: str, record: dict) -> bool:
    digest = hashlib.pbkdf2_hmac(
        "sha256",
        password.encode("utf-8"),
        bytes.fromhex(record["salt"]),
        int(record["iterations"]),
    )
    return secrets.compare_digest(digest.hex(), record["digest"])


def make_identity_record(
    identity_id: str,
    org: str,
    role: str,
    password: str,
    display_name: str = "",
    attrs: dict | None = None,
) -> dict:
    """World-state value the identity system contract writes at registration."""
    return {
        "identity_id": identity_id,
        "org": org,
        "role": role,
        "display_name": display_name,
        "attrs": attrs or {},
        "password": hash_password(password),
    }


def register_user(
    admin_card: HealthCard,
    profile: dict,
    role: str,
    password: str,
    *,
    ca: CAServer,
    wallet: Wallet,
    submit_identity: Callable[[HealthCard, dict], None],
    rng: random.Random | None = None,
) -> HealthCard:
    """Issue a card for a new member and record their identity on the ledger.

    submit_identity routes the identity record through the system contract
    (the full endorse/order/commit pipeline in production, a direct state
    write in unit tests). The wallet gains the card only after that write
    succeeds.
    """
    if admin_card.role != "admin":
        raise AuthorizationError("an user can only perform its general operations")
    if not verify_card(admin_card, ca.root_cert):
        raise AuthorizationError("admin card does not verify under its org CA")
    if role not in ("user", "admin"):
        raise ValueError(f"registrable roles are user and admin, not {role!r}")
    identity_id = profile["identity_id"]
    if identity_id in wallet:
        raise DuplicateIdentity(identity_id)

    private_key, public_key = generate_keypair(rng)
    cert = ca.issue(identity_id, role, public_key)
    card = HealthCard(
        identity_id=identity_id,
        certificate=cert,
        private_key=private_key,
        org=ca.org_name,
        role=role,
    )
    record = make_identity_record(
        identity_id,
        ca.org_name,
        role,
        password,
        display_name=profile.get("display_name", ""),
        attrs=profile.get("attrs", {}),
    )
    submit_identity(admin_card, record)
    wallet.add(card)
    return card


@dataclass
class AccessGrant:
    card: HealthCard
    session_token: str


def authenticate(identity_id: str, password: str, wallet: Wallet, world_state) -> AccessGrant:
    """The login flow; raises InvalidIdentity or InvalidPassword, else grants."""
    card = wallet.get(identity_id)
    if card is None:
        raise InvalidIdentity("Invalid Identity")
    entry = world_state.get(identity_key(card.org, identity_id))
    if entry is None:
        raise InvalidIdentity("Invalid Identity")
    record = canonical.decode(entry.value)
    if not password_matches(password, record["password"]):
        raise InvalidPassword("Invalid Password")
    return AccessGrant(card=card, session_token=secrets.token_hex(16))
