"""Raft state machine, block cutting, and the ordering wire format."""

import random

import pytest

from healthdlt import canonical
from healthdlt.envelope import Transaction
from healthdlt.errors import NotLeader, OversizeError
from healthdlt.identity import bootstrap_ca
from healthdlt.ledger import BlockHeader, compute_block_hash
from healthdlt.ordering import (
    AppendEntries,
    Accepted,
    BlockCutPolicy,
    CutMarker,
    ElectionTimeout,
    LogEntry,
    PendingTx,
    RaftNode,
    RequestVote,
    Send,
    SimMessage,
    cut_block,
    payload_from_wire,
    payload_to_wire,
    step,
    submit,
)
from healthdlt.ordering.raft import CANDIDATE, FOLLOWER, LEADER, VoteReply

import oracles
from healthdlt.harness.scenario import make_raw_tx
from healthdlt.identity import HealthCard, generate_keypair


def make_card(org="TestOrg", rng_seed=5):
    ca = bootstrap_ca(org, random.Random(rng_seed))
    private, public = generate_keypair(random.Random(rng_seed + 1))
    cert = ca.issue("t@TestOrg", "user", public)
    return HealthCard(identity_id="t@TestOrg", certificate=cert, private_key=private, org=org, role="user")


def tx_of_size(card, target_bytes, n):
    """Raw tx whose canonical encoding is close to target_bytes.

    The write-set value is canonical-encoded then hex-doubled inside the
    transaction encoding, hence the /4.
    """
    pad = max(0, (target_bytes - 900) // 4)
    return make_raw_tx(card, f"bulk/{n}", {"pad": "ab" * pad}, nonce=n.to_bytes(16, "big"))


class TestElections:
    def test_single_node_becomes_leader_of_term_1(self):
        node = RaftNode(node_id="n1", peers=[])
        node.timer_epoch = 1
        node, out = step(node, ElectionTimeout(epoch=1))
        assert node.role == LEADER
        assert node.current_term == 1

    def test_vote_granted_once_per_term(self):
        node = RaftNode(node_id="n2", peers=["n1", "n3"])
        node, out = step(node, RequestVote(term=1, candidate_id="n1", last_log_index=-1, last_log_term=-1))
        reply = [s.msg for s in out if isinstance(s, Send)][0]
        assert reply.granted
        node, out = step(node, RequestVote(term=1, candidate_id="n3", last_log_index=-1, last_log_term=-1))
        reply = [s.msg for s in out if isinstance(s, Send)][0]
        assert not reply.granted

    def test_stale_term_append_rejected(self):
        node = RaftNode(node_id="n1", peers=["n2"], current_term=5)
        node, out = step(
            node, AppendEntries(term=3, leader_id="n2", prev_log_index=-1, prev_log_term=-1, entries=[], leader_commit=-1)
        )
        reply = [s.msg for s in out if isinstance(s, Send)][0]
        assert not reply.success
        assert node.role == FOLLOWER

    def test_candidate_steps_down_on_higher_term(self):
        node = RaftNode(node_id="n1", peers=["n2", "n3"])
        node.timer_epoch = 1
        node, _ = step(node, ElectionTimeout(epoch=1))
        assert node.role == CANDIDATE
        node, _ = step(node, VoteReply(term=9, voter_id="n2", granted=False))
        assert node.role == FOLLOWER
        assert node.current_term == 9

    def test_leader_elected_with_majority(self):
        node = RaftNode(node_id="n1", peers=["n2", "n3"])
        node.timer_epoch = 1
        node, _ = step(node, ElectionTimeout(epoch=1))
        node, out = step(node, VoteReply(term=node.current_term, voter_id="n2", granted=True))
        assert node.role == LEADER
        sends = [s for s in out if isinstance(s, Send)]
        assert {s.to for s in sends} == {"n2", "n3"}


class TestSubmit:
    def test_follower_redirects_with_hint(self):
        node = RaftNode(node_id="n2", peers=["n1", "n3"], leader_hint="n1")
        result, out = submit(node, object())
        assert isinstance(result, NotLeader)
        assert result.hint == "n1"

    def test_leader_accepts_and_replicates(self):
        node = RaftNode(node_id="n1", peers=["n2", "n3"], role=LEADER, current_term=1)
        node.next_index = {"n2": 0, "n3": 0}
        node.match_index = {"n2": -1, "n3": -1}
        result, out = submit(node, "payload")
        assert isinstance(result, Accepted)
        appends = [s for s in out if isinstance(s, Send)]
        assert len(appends) == 2
        assert all(len(s.msg.entries) == 1 for s in appends)

    def test_oversize_tx_rejected(self):
        card = make_card()
        node = RaftNode(node_id="n1", peers=[], role=LEADER, current_term=1)
        big = tx_of_size(card, 2 * 1_048_576, 1)
        assert big.encoded_size() > 1_048_576
        with pytest.raises(OversizeError):
            submit(node, big)


class TestLogMatching:
    def test_conflicting_suffix_overwritten(self):
        node = RaftNode(node_id="n2", peers=["n1"])
        node.log = [LogEntry(1, "a"), LogEntry(1, "b"), LogEntry(2, "x")]
        node.current_term = 3
        node, out = step(
            node,
            AppendEntries(
                term=3, leader_id="n1", prev_log_index=1, prev_log_term=1,
                entries=[LogEntry(3, "c"), LogEntry(3, "d")], leader_commit=1,
            ),
        )
        assert [e.payload for e in node.log] == ["a", "b", "c", "d"]
        assert node.commit_index == 1


class TestCutPolicy:
    def make_pending(self, card, count, size=None, start_tick=0):
        txs = []
        for i in range(count):
            tx = tx_of_size(card, size, i) if size else make_raw_tx(card, f"k/{i}", i, nonce=i.to_bytes(16, "big"))
            txs.append(PendingTx(log_index=i, tx=tx, seen_at=start_tick))
        return txs

    def prev_header(self):
        return BlockHeader(number=0, prev_hash=b"\x00" * 32, data_hash=b"\x01" * 32, timestamp=0)

    def test_count_trigger_cuts_exactly_max(self):
        card = make_card()
        pending = self.make_pending(card, 10)
        cut = cut_block(pending, BlockCutPolicy(max_tx_count=10), self.prev_header(),
                        now=1, signer_id="o1", sign_fn=card.sign)
        assert cut is not None
        block, marker = cut
        assert len(block.transactions) == 10
        assert marker.upto_index == 9

    def test_young_single_tx_not_yet(self):
        card = make_card()
        pending = self.make_pending(card, 1, start_tick=100)
        cut = cut_block(pending, BlockCutPolicy(), self.prev_header(), now=150, signer_id="o1", sign_fn=card.sign)
        assert cut is None

    def test_age_trigger_cuts(self):
        card = make_card()
        pending = self.make_pending(card, 1, start_tick=100)
        cut = cut_block(pending, BlockCutPolicy(), self.prev_header(), now=601, signer_id="o1", sign_fn=card.sign)
        assert cut is not None

    def test_byte_budget_defers_seventh_tx(self):
        card = make_card()
        target = 150_000
        pending = self.make_pending(card, 7, size=target)
        sizes = [p.tx.encoded_size() for p in pending]
        # independent oracle over the canonical encodings decides the prefix
        oracle_sizes = [len(oracles.enc(p.tx.to_dict())) for p in pending]
        assert sizes == oracle_sizes
        expected = oracles.greedy_cut_prefix(oracle_sizes, max_count=10, max_bytes=1_048_576)
        assert expected == 6

        cut = cut_block(pending, BlockCutPolicy(), self.prev_header(), now=0, signer_id="o1", sign_fn=card.sign)
        assert cut is not None
        block, marker = cut
        assert len(block.transactions) == 6
        assert marker.upto_index == 5
        assert block.encoded_size() <= 1_048_576

    def test_signature_verifies_under_cutter_card(self):
        card = make_card()
        pending = self.make_pending(card, 10)
        block, _ = cut_block(pending, BlockCutPolicy(), self.prev_header(), now=0, signer_id="o1", sign_fn=card.sign)
        from healthdlt.identity import verify

        assert verify(card.certificate.public_key, block.orderer_signature, compute_block_hash(block.header))


class TestWireFormat:
    def test_raft_payload_roundtrip(self):
        card = make_card()
        tx = make_raw_tx(card, "k", {"v": 1}, nonce=b"0123456789abcdef")
        msg = AppendEntries(
            term=3, leader_id="o1", prev_log_index=4, prev_log_term=2,
            entries=[LogEntry(3, tx), LogEntry(3, CutMarker(4, 1000, "o1", b"\x05"))],
            leader_commit=2,
        )
        wire = payload_to_wire(msg)
        decoded = payload_from_wire(canonical.decode(canonical.encode(wire)))
        assert decoded.term == 3 and decoded.prev_log_index == 4
        assert isinstance(decoded.entries[0].payload, Transaction)
        assert decoded.entries[0].payload.encoded() == tx.encoded()
        assert isinstance(decoded.entries[1].payload, CutMarker)
        assert decoded.entries[1].payload.upto_index == 4

    def test_tcp_framing_roundtrip(self):
        import threading

        from healthdlt.harness.tcp import MessageServer, send_message

        received = []
        done = threading.Event()

        def on_msg(msg):
            received.append(msg)
            if len(received) == 2:
                done.set()

        server = MessageServer("127.0.0.1", 0, on_msg)
        server.start()
        try:
            send_message("127.0.0.1", server.port, SimMessage("o1", "o2", RequestVote(1, "o1", -1, -1), 0))
            card = make_card()
            tx = make_raw_tx(card, "k", {"v": 1}, nonce=b"fedcba9876543210")
            send_message(
                "127.0.0.1",
                server.port,
                SimMessage("o1", "o2", AppendEntries(1, "o1", -1, -1, [LogEntry(1, tx)], -1), 0),
            )
            assert done.wait(timeout=5)
        finally:
            server.stop()
        assert isinstance(received[0].payload, RequestVote)
        assert received[1].payload.entries[0].payload.encoded() == tx.encoded()
