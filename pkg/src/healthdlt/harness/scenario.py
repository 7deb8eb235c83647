"""Scenario scripts: ordered {at_tick, action} records driven into a network.

Actions: submit (a keyed test write), kill, partition, heal. Submissions
are retried by the harness client until they commit, so a script can kill
the ordering leader mid-stream and still expect every write to land.
"""

from __future__ import annotations

import random

from .. import canonical
from ..envelope import Endorsement, Proposal, Transaction, response_digest
from ..identity import HealthCard, generate_keypair
from .network import Network


def make_scenario_card(network: Network, rng: random.Random | None = None) -> HealthCard:
    """A user card from the first org's CA, for raw scripted writes."""
    org = network.config.orgs[0].name
    ca = network.cas[org]
    private, public = generate_keypair(rng)
    cert = ca.issue(f"scenario@{org}", "user", public)
    return HealthCard(
        identity_id=cert.subject_id,
        certificate=cert,
        private_key=private,
        org=org,
        role="user",
    )


def make_raw_tx(card: HealthCard, key: str, value, nonce: bytes, timestamp: int = 0) -> Transaction:
    """A self-endorsed transaction writing one key; bypasses chaincode.

    Good enough for ordering-layer tests: commit-time MVCC only inspects
    the read/write sets.
    """
    proposal = Proposal(
        contract_fn="raw.put",
        args=[key],
        invoker_cert=card.certificate.to_dict(),
        client_signature=b"",
        nonce=nonce,
        timestamp=timestamp,
    )
    proposal.client_signature = card.sign(proposal.signed_payload())
    write_set = [(key, canonical.encode(value))]
    digest = response_digest([], write_set, None)
    endorsement = Endorsement(
        endorser_cert=card.certificate.to_dict(),
        response_digest=digest,
        signature=card.sign(digest),
    )
    return Transaction(
        tx_id=proposal.tx_id(),
        proposal=proposal,
        endorsements=[endorsement],
        read_set=[],
        write_set=write_set,
    )


def run_scenario(network: Network, script: list[dict], card: HealthCard | None = None) -> dict:
    """Schedule every record, then drain the queue; returns submitted tx ids.

    Record shapes:
      {"at": t, "action": "submit", "key": k, "value": v}
      {"at": t, "action": "kill", "node": (org, role, port) | addr}
      {"at": t, "action": "partition", "a": [...], "b": [...]}
      {"at": t, "action": "heal"}
    """
    if card is None:
        card = make_scenario_card(network, random.Random(network.config.seed + 1))
    submitted: dict[str, Transaction] = {}
    rng = random.Random(network.config.seed + 2)
    records = sorted(script, key=lambda r: r["at"])
    for record in records:
        action = record["action"]
        if action == "submit":
            tx = make_raw_tx(
                card, record["key"], record["value"], nonce=rng.randbytes(16), timestamp=record["at"]
            )
            submitted[tx.tx_id.hex()] = tx
            network._schedule_action(record["at"], lambda tx=tx: network.submit_and_track(tx))
        elif action == "kill":
            network._schedule_action(record["at"], lambda n=record["node"]: network.kill(n))
        elif action == "partition":
            network._schedule_action(
                record["at"], lambda a=record["a"], b=record["b"]: network.partition(a, b)
            )
        elif action == "heal":
            network._schedule_action(record["at"], network.heal)
        else:
            raise ValueError(f"unknown scenario action {action!r}")
    return submitted
