"""Gateway orchestration: the six-step endorse -> order -> commit flow.

Chaincode runs once, at endorsement, against a snapshot of the invoker
org's anchor peer; the captured write set is applied only when the ordered
block commits. Mutating calls wait until every live anchor has committed
the transaction's block, so any follow-up query sees the effect regardless
of which org serves it.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import NamedTuple

from ..contracts.registry import READ_ONLY_FNS
from ..envelope import MAX_TX_BYTES, Proposal, Transaction
from ..errors import (
    AuthorizationError,
    ChaincodeError,
    HealthDltError,
    OversizeError,
    PolicyUnsatisfied,
    TimeoutError,
)
from ..harness.network import Network
from ..identity import HealthCard, Wallet, authenticate, enroll_default_admin, register_user
from .documents import DocumentStore
from .sessions import DEFAULT_IDLE_MS, SessionRegistry


class TxInvalidated(HealthDltError):
    """Transaction committed but was flagged invalid (stale reads)."""


class CommitReceipt(NamedTuple):
    block_number: int
    tx_index: int
    valid: bool

    def to_dict(self) -> dict:
        return {
            "block_number": self.block_number,
            "tx_index": self.tx_index,
            "valid": self.valid,
        }


@dataclass
class GatewayConfig:
    endorsements_required: int = 1
    submit_timeout_ms: int = 30_000
    session_idle_ms: int = DEFAULT_IDLE_MS
    document_dir: str | None = None
    document_size_limit: int = 10 * 1024 * 1024
    admin_password: str = "adminpw"


class GatewayService:
    def __init__(self, network: Network, wallet: Wallet, config: GatewayConfig | None = None):
        self.network = network
        self.wallet = wallet
        self.config = config or GatewayConfig()
        self.sessions = SessionRegistry(self.config.session_idle_ms)
        self.documents = DocumentStore(
            self.config.document_dir, self.config.document_size_limit
        )

    # --- bootstrap ---

    def bootstrap_admins(self, password: str | None = None) -> dict[str, HealthCard]:
        """Enroll each org's default admin and put their identity on-ledger."""
        password = password or self.config.admin_password
        admins: dict[str, HealthCard] = {}
        from ..identity import make_identity_record

        for org in self.network.config.orgs:
            ca = self.network.cas[org.name]
            card = enroll_default_admin(ca)
            self.wallet.add(card)
            record = make_identity_record(
                card.identity_id, org.name, "admin", password, display_name=f"{org.name} admin"
            )
            result, receipt = self.invoke_with_card(card, "identity.register", [record])
            if not receipt.valid:
                raise ChaincodeError(f"admin registration for {org.name} conflicted")
            admins[org.name] = card
        return admins

    # --- identity ---

    def login(self, identity_id: str, password: str) -> dict:
        card = self.wallet.get(identity_id)
        if card is not None:
            self._require_anchor_alive(card.org)
            anchor = self.network.anchor(card.org)
            grant = authenticate(identity_id, password, self.wallet, anchor.state)
        else:
            grant = authenticate(identity_id, password, self.wallet, None)  # raises InvalidIdentity
        self.sessions.create(grant.session_token, grant.card)
        return {
            "token": grant.session_token,
            "identity_id": grant.card.identity_id,
            "org": grant.card.org,
            "role": grant.card.role,
            "stakeholder": self.network.config.stakeholder_of(grant.card.org),
        }

    def register_user(self, session_token: str, profile: dict, role: str, password: str) -> dict:
        admin_card = self.sessions.resolve(session_token)
        if admin_card.role != "admin":
            raise AuthorizationError("an user can only perform its general operations")
        ca = self.network.cas[admin_card.org]
        self._require_ca_alive(admin_card.org)

        def submit_identity(card: HealthCard, record: dict) -> None:
            result, receipt = self.invoke_with_card(card, "identity.register", [record])
            if not receipt.valid:
                raise TxInvalidated("registration lost a commit-time conflict")

        card = register_user(
            admin_card,
            profile,
            role,
            password,
            ca=ca,
            wallet=self.wallet,
            submit_identity=submit_identity,
        )
        return {"identity_id": card.identity_id, "org": card.org, "role": card.role}

    # --- transaction flow ---

    def make_proposal(self, card: HealthCard, fn: str, args: list) -> Proposal:
        proposal = Proposal(
            contract_fn=fn,
            args=args,
            invoker_cert=card.certificate.to_dict(),
            client_signature=b"",
            nonce=os.urandom(16),
            timestamp=int(time.time() * 1000),
        )
        proposal.client_signature = card.sign(proposal.signed_payload())
        return proposal

    def endorse(self, proposal: Proposal) -> tuple[Transaction, object]:
        """MSP check plus simulated execution at the invoker org's anchor."""
        org = proposal.invoker_cert.get("org", "")
        self._require_anchor_alive(org)
        anchor = self.network.anchor(org)
        with self.network.lock:
            return anchor.endorse(proposal)

    def submit_and_wait(self, tx: Transaction, timeout_ms: int | None = None) -> CommitReceipt:
        timeout_ms = timeout_ms or self.config.submit_timeout_ms
        invoker_org = tx.proposal.invoker_cert.get("org", "")
        if not self._policy_satisfied(tx, invoker_org):
            raise PolicyUnsatisfied(
                f"need {self.config.endorsements_required} endorsement(s) from {invoker_org}"
            )
        if tx.encoded_size() > MAX_TX_BYTES:
            raise OversizeError(f"transaction encodes to {tx.encoded_size()} bytes")
        deadline = time.monotonic() + timeout_ms / 1000.0
        accepted = None
        while accepted is None:
            accepted = self.network.try_submit(tx)
            if accepted is None:
                if time.monotonic() >= deadline:
                    raise TimeoutError(f"no ordering leader within {timeout_ms} ms")
                time.sleep(0.02)
        remaining_ms = max(1, int((deadline - time.monotonic()) * 1000))
        anchors = self.network.live_anchor_addrs()
        receipt = self.network.wait_for_commit(tx.tx_id.hex(), anchors, remaining_ms)
        return CommitReceipt(*receipt)

    def invoke_with_card(self, card: HealthCard, fn: str, args: list) -> tuple[object, CommitReceipt]:
        proposal = self.make_proposal(card, fn, args)
        tx, result = self.endorse(proposal)
        receipt = self.submit_and_wait(tx)
        return result, receipt

    def invoke(self, session_token: str, fn: str, args: list) -> tuple[object, CommitReceipt]:
        card = self.sessions.resolve(session_token)
        return self.invoke_with_card(card, fn, args)

    def query(self, session_token: str, fn: str, args: list) -> object:
        """Read-only execution at the invoker org's anchor; nothing ordered."""
        if fn not in READ_ONLY_FNS:
            raise ChaincodeError(f"{fn} is not a read-only function")
        card = self.sessions.resolve(session_token)
        self._require_anchor_alive(card.org)
        anchor = self.network.anchor(card.org)
        proposal = self.make_proposal(card, fn, args)
        with self.network.lock:
            return anchor.query(proposal)

    # --- documents ---

    def put_document(self, session_token: str, content: bytes, media_type: str) -> bytes:
        self.sessions.resolve(session_token)
        return self.documents.put(content, media_type)

    def get_document(self, session_token: str, digest: bytes):
        self.sessions.resolve(session_token)
        return self.documents.get(digest)

    # --- liveness ---

    def health(self) -> dict:
        with self.network.lock:
            heights = {
                org: self.network.anchor(org).height
                for org in self.network.anchor_addrs
                if self.network.anchor_addrs[org] not in self.network.dead
            }
        return {"status": "ok", "heights": heights, "height": max(heights.values(), default=-1)}

    # --- internals ---

    def _policy_satisfied(self, tx: Transaction, invoker_org: str) -> bool:
        matching = sum(
            1 for e in tx.endorsements if e.endorser_cert.get("org") == invoker_org
        )
        return matching >= self.config.endorsements_required

    def _require_anchor_alive(self, org: str) -> None:
        addr = self.network.anchor_addrs.get(org)
        if addr is None or addr in self.network.dead:
            raise TimeoutError(f"anchor peer for {org!r} is unreachable")

    def _require_ca_alive(self, org: str) -> None:
        spec = next(o for o in self.network.config.orgs if o.name == org)
        addr = f"{org}/ca/{spec.ca_port}"
        if addr in self.network.dead:
            raise TimeoutError(f"CA server for {org!r} is unreachable")
