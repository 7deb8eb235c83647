"""Per-organization certificate authorities, health cards, and login."""

from .ca import (
    ROLES,
    CAServer,
    Certificate,
    bootstrap_ca,
    generate_keypair,
    sign,
    verify,
    verify_card,
    verify_cert_dict,
)
from .wallet import HealthCard, FileWallet, Wallet, enroll_default_admin, export_certificate
from .auth import (
    AccessGrant,
    authenticate,
    hash_password,
    identity_key,
    make_identity_record,
    password_matches,
    register_user,
)

__all__ = [
    "ROLES",
    "AccessGrant",
    "CAServer",
    "Certificate",
    "FileWallet",
    "HealthCard",
    "Wallet",
    "authenticate",
    "bootstrap_ca",
    "enroll_default_admin",
    "export_certificate",
    "generate_keypair",
    "hash_password",
    "identity_key",
    "make_identity_record",
    "password_matches",
    "register_user",
    "sign",
    "verify",
    "verify_card",
    "verify_cert_dict",
]
