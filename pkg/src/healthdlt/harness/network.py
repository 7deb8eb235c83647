"""In-process network: orderers, anchor and gossip peers, fault injection.

Simulation mode is single-threaded and tick-driven: every message latency
and election timeout comes from one seeded generator, so a (config, seed,
scenario) triple always replays to the same block stream and tick counts.
Live mode drives the same machinery from a background thread that maps
ticks to wall-clock milliseconds, which is what the HTTP gateway runs on.

Block delivery: the raft leader materializes each cut block from its log
and pushes it to every anchor; anchors re-validate and forward to their
org's gossip peers. Tip announcements plus block requests handle catch-up
after partitions heal.
"""

from __future__ import annotations

import heapq
import random
import threading
import time
from dataclasses import dataclass

from .. import canonical
from ..contracts import InvokerContext, execute
from ..envelope import Endorsement, Proposal, Transaction, response_digest
from ..errors import (
    InvalidSignature,
    NotLeader,
    TimeoutError,
    UnknownNode,
)
from ..identity import CAServer, Certificate, HealthCard, bootstrap_ca, generate_keypair, verify, verify_cert_dict
from ..ledger import (
    Block,
    BlockStore,
    ConsortiumConfig,
    FileBlockStore,
    WorldState,
    commit_block,
    compute_block_hash,
    compute_data_hash,
    create_genesis_block,
    validate_chain,
)
from ..ordering import (
    Accepted,
    AppendEntries,
    AppendReply,
    BlockCutPolicy,
    CutMarker,
    ElectionTimeout,
    HeartbeatTick,
    PendingTx,
    RaftNode,
    RequestVote,
    ResetElectionTimer,
    ScheduleHeartbeat,
    Send,
    VoteReply,
    build_block,
    cut_block,
    step,
    submit,
)
from ..ordering.raft import LEADER
from .topology import TopologyConfig

LATENCY_RANGE = (1, 5)
CUT_CHECK_INTERVAL = 25
TIP_ANNOUNCE_INTERVAL = 100
RESUBMIT_INTERVAL = 400
SUBMIT_HOPS = 3

_RAFT_EVENTS = (ElectionTimeout, HeartbeatTick, RequestVote, VoteReply, AppendEntries, AppendReply)


# --- scheduler intents returned by nodes ---

@dataclass
class Emit:
    to: str
    event: object


@dataclass
class After:
    delay: int
    event: object


@dataclass
class ElectionReset:
    epoch: int


# --- inter-node events beyond raft traffic ---

@dataclass
class DeliverBlock:
    block: Block
    sender: str


@dataclass
class ChainTip:
    height: int
    sender: str


@dataclass
class BlockRequest:
    from_height: int
    reply_to: str


@dataclass
class CutCheck:
    pass


@dataclass
class TipAnnounce:
    pass


@dataclass
class SubmitTask:
    tx: Transaction


@dataclass
class CommitCheck:
    tx: Transaction


@dataclass
class ScriptAction:
    fn: object


class OrdererNode:
    """Raft participant that also materializes and delivers cut blocks."""

    def __init__(
        self,
        node_id: str,
        addr: str,
        peer_ids: list[str],
        directory: dict,
        card: HealthCard,
        genesis: Block,
        policy: BlockCutPolicy,
        store: BlockStore,
        time_base: int = 0,
    ):
        self.node_id = node_id
        self.addr = addr
        self.raft = RaftNode(node_id=node_id, peers=peer_ids)
        self.directory = directory  # orderer id -> addr, plus anchor addrs
        self.card = card
        self.chain = store
        if len(self.chain) == 0:
            self.chain.append(genesis)
        self.policy = policy
        self.time_base = time_base
        self.pending: list[PendingTx] = []
        self._pending_ids: set[bytes] = set()
        self._seen_txids: set[bytes] = {
            tx.tx_id for block in self.chain for tx in block.transactions
        }
        self._consumed = -1
        self._materialized_upto = -1
        self._inflight: list[tuple[int, int, int]] = []  # (log_index, term, upto)

    # --- event handling ---

    def handle(self, event, now: int) -> list:
        out: list = []
        if isinstance(event, _RAFT_EVENTS):
            _, raft_out = step(self.raft, event)
            out.extend(self._route(raft_out))
            if isinstance(event, HeartbeatTick) and self.raft.role == LEADER:
                out.extend(
                    Emit(a, ChainTip(self.chain.height, self.addr))
                    for a in self.directory["anchors"]
                )
            out.extend(self._post(now))
        elif isinstance(event, CutCheck):
            out.extend(self._post(now))
            out.append(After(CUT_CHECK_INTERVAL, CutCheck()))
        elif isinstance(event, BlockRequest):
            for number in range(event.from_height, self.chain.height + 1):
                out.append(Emit(event.reply_to, DeliverBlock(self.chain.block(number), self.addr)))
        return out

    def client_submit(self, tx: Transaction, now: int):
        """Synchronous submission RPC; returns (Accepted | NotLeader, outbound)."""
        result, sends = submit(self.raft, tx)
        if isinstance(result, NotLeader):
            return result, []
        return result, self._route(sends) + self._post(now)

    # --- internals ---

    def _route(self, raft_out) -> list:
        out = []
        for item in raft_out:
            if isinstance(item, Send):
                out.append(Emit(self.directory["orderers"][item.to], item.msg))
            elif isinstance(item, ResetElectionTimer):
                out.append(ElectionReset(item.epoch))
            elif isinstance(item, ScheduleHeartbeat):
                out.append(After(0, HeartbeatTick()))  # delay patched by network
        return out

    def _post(self, now: int) -> list:
        out = []
        while True:
            out.extend(self._consume(now))
            cut_out = self._maybe_cut(now)
            if not cut_out:
                break
            out.extend(cut_out)
        return out

    def _consume(self, now: int) -> list:
        out = []
        while self._consumed < self.raft.commit_index:
            self._consumed += 1
            payload = self.raft.log[self._consumed].payload
            if isinstance(payload, Transaction):
                if payload.tx_id not in self._seen_txids and payload.tx_id not in self._pending_ids:
                    self.pending.append(PendingTx(self._consumed, payload, now))
                    self._pending_ids.add(payload.tx_id)
            elif isinstance(payload, CutMarker):
                out.extend(self._materialize(payload))
        return out

    def _materialize(self, marker: CutMarker) -> list:
        taken = [p for p in self.pending if p.log_index <= marker.upto_index]
        self.pending = [p for p in self.pending if p.log_index > marker.upto_index]
        self._pending_ids = {p.tx.tx_id for p in self.pending}
        self._materialized_upto = max(self._materialized_upto, marker.upto_index)
        if not taken:
            return []
        block = build_block([p.tx for p in taken], self.chain.tip().header, marker.timestamp)
        block.orderer_signature = marker.signature
        self.chain.append(block)
        self._seen_txids.update(p.tx.tx_id for p in taken)
        if self.raft.role == LEADER:
            return [Emit(a, DeliverBlock(block, self.addr)) for a in self.directory["anchors"]]
        return []

    def _cut_floor(self) -> int:
        floor = self._materialized_upto
        keep = []
        for idx, term, upto in self._inflight:
            if idx <= self._consumed:
                continue  # materialized (or about to be) via consume
            if idx >= len(self.raft.log) or self.raft.log[idx].term != term:
                continue  # truncated by a newer leader
            keep.append((idx, term, upto))
            floor = max(floor, upto)
        self._inflight = keep
        return floor

    def _maybe_cut(self, now: int) -> list:
        if self.raft.role != LEADER:
            self._cut_floor()
            return []
        floor = self._cut_floor()
        if self._inflight:
            return []  # previous cut not yet committed; keep blocks linear
        candidates = [p for p in self.pending if p.log_index > floor]
        cut = cut_block(
            candidates,
            self.policy,
            self.chain.tip().header,
            now=now,
            timestamp=self.time_base + now,
            signer_id=self.node_id,
            sign_fn=self.card.sign,
        )
        if cut is None:
            return []
        _, marker = cut
        result, sends = submit(self.raft, marker)
        assert isinstance(result, Accepted)
        self._inflight.append((result.log_index, self.raft.current_term, marker.upto_index))
        return self._route(sends)


class PeerNode:
    """Anchor or gossip peer: holds the chain and world state, re-validates
    every delivered block, and (anchors only) endorses proposals."""

    def __init__(
        self,
        addr: str,
        org: str,
        kind: str,  # anchor | gossip
        card: HealthCard,
        genesis: Block,
        store: BlockStore,
        org_stakeholders: dict[str, str],
        orderer_certs: list[Certificate],
        gossip_targets: list[str],
        on_commit=None,
    ):
        self.addr = addr
        self.org = org
        self.kind = kind
        self.card = card
        self.org_stakeholders = org_stakeholders
        self.orderer_certs = orderer_certs
        self.gossip_targets = gossip_targets
        self.on_commit = on_commit
        self.rejected_blocks = 0
        self.state = WorldState()
        self.chain = store
        if len(self.chain) == 0:
            self.chain.append(genesis)
        for block in self.chain:  # replay (a resumed file store may hold history)
            commit_block(block, self.state)
        self._future: dict[int, Block] = {}

    @property
    def height(self) -> int:
        return self.chain.height

    def handle(self, event, now: int) -> list:
        out: list = []
        if isinstance(event, DeliverBlock):
            out.extend(self._receive(event.block, event.sender))
        elif isinstance(event, ChainTip):
            if event.height > self.chain.height:
                out.append(Emit(event.sender, BlockRequest(self.chain.height + 1, self.addr)))
        elif isinstance(event, BlockRequest):
            for number in range(event.from_height, self.chain.height + 1):
                out.append(Emit(event.reply_to, DeliverBlock(self.chain.block(number), self.addr)))
        elif isinstance(event, TipAnnounce):
            out.extend(
                Emit(target, ChainTip(self.chain.height, self.addr))
                for target in self.gossip_targets
            )
            out.append(After(TIP_ANNOUNCE_INTERVAL, TipAnnounce()))
        return out

    def _receive(self, block: Block, sender: str) -> list:
        out: list = []
        number = block.header.number
        if number <= self.chain.height:
            return out
        if number > self.chain.height + 1:
            self._future[number] = block
            out.append(Emit(sender, BlockRequest(self.chain.height + 1, self.addr)))
            return out
        while block is not None:
            if not self._accept(block):
                break
            out.extend(Emit(t, DeliverBlock(block, self.addr)) for t in self.gossip_targets)
            block = self._future.pop(self.chain.height + 1, None)
        return out

    def _accept(self, block: Block) -> bool:
        try:
            self.chain.check_append(block)
            if block.header.data_hash != compute_data_hash(block.transactions):
                raise InvalidSignature("data hash mismatch")
            header_hash = compute_block_hash(block.header)
            if not any(
                verify(cert.public_key, block.orderer_signature, header_hash)
                for cert in self.orderer_certs
            ):
                raise InvalidSignature("orderer signature does not verify")
        except Exception:
            self.rejected_blocks += 1
            return False
        commit_block(block, self.state)
        self.chain.append(block)
        if self.on_commit is not None:
            self.on_commit(self, block)
        return True

    # --- endorsement (anchors; called synchronously under the network lock) ---

    def endorse(self, proposal: Proposal) -> tuple[Transaction, object]:
        result, read_set, write_set = self._execute(proposal)
        digest = response_digest(read_set, write_set, result)
        endorsement = Endorsement(
            endorser_cert=self.card.certificate.to_dict(),
            response_digest=digest,
            signature=self.card.sign(digest),
        )
        tx = Transaction(
            tx_id=proposal.tx_id(),
            proposal=proposal,
            endorsements=[endorsement],
            read_set=read_set,
            write_set=write_set,
        )
        return tx, result

    def query(self, proposal: Proposal) -> object:
        result, _, _ = self._execute(proposal)
        return result

    def _execute(self, proposal: Proposal):
        cert = proposal.invoker_cert
        org = cert.get("org", "")
        root_entry = self.state.get(f"config/org/{org}")
        if root_entry is None:
            raise InvalidSignature(f"organization {org!r} is not in the consortium")
        if not verify_cert_dict(cert, canonical.decode(root_entry.value)):
            raise InvalidSignature("invoker certificate does not verify under its org root")
        public_key = bytes.fromhex(cert["public_key"])
        if not verify(public_key, proposal.client_signature, proposal.signed_payload()):
            raise InvalidSignature("client signature does not verify")
        ctx = InvokerContext(
            identity_id=cert["subject_id"],
            org=org,
            cert_role=cert["role"],
            stakeholder=self.org_stakeholders.get(org),
            timestamp=proposal.timestamp,
            tx_seed=proposal.tx_id().hex(),
        )
        return execute(proposal.contract_fn, proposal.args, ctx, self.state.snapshot())


class ClientAgent:
    """Harness-side client that resubmits until a transaction commits."""

    def __init__(self, addr: str, network: "Network"):
        self.addr = addr
        self.network = network

    def handle(self, event, now: int) -> list:
        if isinstance(event, SubmitTask):
            self.network.try_submit(event.tx)
            return [After(RESUBMIT_INTERVAL, CommitCheck(event.tx))]
        if isinstance(event, CommitCheck):
            if self.network.committed_anywhere(event.tx.tx_id.hex()):
                return []
            self.network.try_submit(event.tx)
            return [After(RESUBMIT_INTERVAL, CommitCheck(event.tx))]
        return []


class Network:
    """Every node, the event queue, and the fault set, under one lock."""

    def __init__(self, config: TopologyConfig, data_dir: str | None = None, time_base: int = 0):
        self.config = config
        self.rng = random.Random(config.seed)
        self.data_dir = data_dir
        self.time_base = time_base
        self.tick = 0
        self._queue: list = []
        self._seq = 0
        self.dead: set[str] = set()
        self.partitions: list[tuple[frozenset, frozenset]] = []
        self.lock = threading.RLock()
        self.commit_cv = threading.Condition(self.lock)
        self.receipts: dict[tuple[str, str], tuple[int, int, bool]] = {}
        self.leadership_log: list[tuple[int, str]] = []
        self._leadership_seen: set[tuple[int, str]] = set()
        self.nodes: dict[str, object] = {}
        self.node_keys: dict[tuple, str] = {}
        self._node_dirs: dict[str, str] = {}
        self.cas: dict[str, CAServer] = {}
        self.orderer_ca: CAServer | None = None
        self.orderer_addrs: list[str] = []
        self.anchor_addrs: dict[str, str] = {}  # org -> anchor addr
        self.gossip_addrs: dict[str, list[str]] = {}
        self.genesis: Block | None = None
        self._last_leader_addr: str | None = None
        self._runner: _LiveRunner | None = None
        self._bootstrap()

    # --- bootstrap ---

    def _store_for(self, addr: str) -> BlockStore:
        if self.data_dir is None:
            return BlockStore()
        import os

        safe = addr.replace("/", "_")
        node_dir = os.path.join(self.data_dir, safe)
        os.makedirs(node_dir, exist_ok=True)
        self._node_dirs[addr] = node_dir
        return FileBlockStore(os.path.join(node_dir, f"chain-{self.config.channel}.blocks"))

    def save_state_snapshots(self) -> list[str]:
        """Write each file-backed peer's world state as state-<channel>.snap."""
        import os

        paths = []
        with self.lock:
            for peer in self.peers():
                node_dir = self._node_dirs.get(peer.addr)
                if node_dir is None:
                    continue
                path = os.path.join(node_dir, f"state-{self.config.channel}.snap")
                peer.state.save_snapshot(path)
                paths.append(path)
        return paths

    def _bootstrap(self) -> None:
        cfg = self.config
        self.orderer_ca = bootstrap_ca("OrdererOrg", self.rng)
        ca_addr = f"orderer/ca/{cfg.orderer_ca_port}"
        self.nodes[ca_addr] = self.orderer_ca
        self.node_keys[("orderer", "ca", cfg.orderer_ca_port)] = ca_addr
        for org in cfg.orgs:
            ca = bootstrap_ca(org.name, self.rng)
            self.cas[org.name] = ca
            addr = f"{org.name}/ca/{org.ca_port}"
            self.nodes[addr] = ca
            self.node_keys[(org.name, "ca", org.ca_port)] = addr

        org_stakeholders = {org.name: org.stakeholder for org in cfg.orgs}
        self.genesis = create_genesis_block(
            ConsortiumConfig(
                channel=cfg.channel,
                org_root_certs=[self.cas[o.name].root_cert.to_dict() for o in cfg.orgs],
                orderer_root_cert=self.orderer_ca.root_cert.to_dict(),
                timestamp=self.time_base,
            )
        )

        orderer_cards: dict[str, HealthCard] = {}
        orderer_certs: list[Certificate] = []
        for spec in cfg.orderers:
            private, public = generate_keypair(self.rng)
            cert = self.orderer_ca.issue(f"{spec.id}@OrdererOrg", "orderer", public)
            orderer_cards[spec.id] = HealthCard(
                identity_id=cert.subject_id,
                certificate=cert,
                private_key=private,
                org="OrdererOrg",
                role="orderer",
            )
            orderer_certs.append(cert)

        orderer_dir = {spec.id: f"orderer/{spec.id}/{spec.port}" for spec in cfg.orderers}
        directory = {
            "orderers": orderer_dir,
            "anchors": [],  # filled below
        }

        for org in cfg.orgs:
            anchor_addr = f"{org.name}/anchor/{org.anchor_port}"
            self.anchor_addrs[org.name] = anchor_addr
            directory["anchors"].append(anchor_addr)
            self.gossip_addrs[org.name] = [
                f"{org.name}/gossip/{port}" for port in org.gossip_ports
            ]

        for org in cfg.orgs:
            ca = self.cas[org.name]
            anchor_addr = self.anchor_addrs[org.name]
            private, public = generate_keypair(self.rng)
            anchor_card = HealthCard(
                identity_id=f"anchor@{org.name}",
                certificate=ca.issue(f"anchor@{org.name}", "peer", public),
                private_key=private,
                org=org.name,
                role="peer",
            )
            anchor = PeerNode(
                addr=anchor_addr,
                org=org.name,
                kind="anchor",
                card=anchor_card,
                genesis=self.genesis,
                store=self._store_for(anchor_addr),
                org_stakeholders=org_stakeholders,
                orderer_certs=orderer_certs,
                gossip_targets=self.gossip_addrs[org.name],
                on_commit=self._on_peer_commit,
            )
            self.nodes[anchor_addr] = anchor
            self.node_keys[(org.name, "anchor", org.anchor_port)] = anchor_addr
            for port, gossip_addr in zip(org.gossip_ports, self.gossip_addrs[org.name]):
                private, public = generate_keypair(self.rng)
                card = HealthCard(
                    identity_id=f"gossip{port}@{org.name}",
                    certificate=ca.issue(f"gossip{port}@{org.name}", "peer", public),
                    private_key=private,
                    org=org.name,
                    role="peer",
                )
                gossip = PeerNode(
                    addr=gossip_addr,
                    org=org.name,
                    kind="gossip",
                    card=card,
                    genesis=self.genesis,
                    store=self._store_for(gossip_addr),
                    org_stakeholders=org_stakeholders,
                    orderer_certs=orderer_certs,
                    gossip_targets=[],
                    on_commit=self._on_peer_commit,
                )
                self.nodes[gossip_addr] = gossip
                self.node_keys[(org.name, "gossip", port)] = gossip_addr

        peer_ids = [spec.id for spec in cfg.orderers]
        for spec in cfg.orderers:
            addr = orderer_dir[spec.id]
            node = OrdererNode(
                node_id=spec.id,
                addr=addr,
                peer_ids=[p for p in peer_ids if p != spec.id],
                directory=directory,
                card=orderer_cards[spec.id],
                genesis=self.genesis,
                policy=BlockCutPolicy(),
                store=self._store_for(addr),
                time_base=self.time_base,
            )
            self.nodes[addr] = node
            self.node_keys[("orderer", spec.id, spec.port)] = addr
            self.orderer_addrs.append(addr)

        self._client_addr = "client/agent/0"
        self.nodes[self._client_addr] = ClientAgent(self._client_addr, self)

        # initial timers, in declaration order for determinism
        for addr in self.orderer_addrs:
            node = self.nodes[addr]
            self._schedule(None, addr, ElectionTimeout(node.raft.timer_epoch + 1), self._election_delay())
            node.raft.timer_epoch += 1
            self._schedule(None, addr, CutCheck(), CUT_CHECK_INTERVAL)
        for org in cfg.orgs:
            self._schedule(None, self.anchor_addrs[org.name], TipAnnounce(), TIP_ANNOUNCE_INTERVAL)

    # --- scheduling and delivery ---

    def _election_delay(self) -> int:
        from ..ordering import ELECTION_TIMEOUT_RANGE

        return self.rng.randint(*ELECTION_TIMEOUT_RANGE)

    def _schedule(self, origin: str | None, target: str, event, delay: int) -> None:
        self._seq += 1
        heapq.heappush(self._queue, (self.tick + delay, self._seq, origin, target, event))

    def _send(self, origin: str, target: str, event) -> None:
        self._schedule(origin, target, event, self.rng.randint(*LATENCY_RANGE))

    def _blocked(self, origin: str, target: str) -> bool:
        for side_a, side_b in self.partitions:
            if (origin in side_a and target in side_b) or (origin in side_b and target in side_a):
                return True
        return False

    def _route_outbound(self, origin: str, out: list) -> None:
        node = self.nodes[origin]
        for item in out:
            if isinstance(item, Emit):
                self._send(origin, item.to, item.event)
            elif isinstance(item, After):
                delay = item.delay
                if isinstance(item.event, HeartbeatTick) and delay == 0:
                    from ..ordering import HEARTBEAT_INTERVAL

                    delay = HEARTBEAT_INTERVAL
                self._schedule(None, origin, item.event, delay)
            elif isinstance(item, ElectionReset):
                self._schedule(None, origin, ElectionTimeout(item.epoch), self._election_delay())
        if isinstance(node, OrdererNode):
            self._audit_leadership(node)

    def _audit_leadership(self, node: OrdererNode) -> None:
        if node.raft.role == LEADER:
            key = (node.raft.current_term, node.node_id)
            if key not in self._leadership_seen:
                self._leadership_seen.add(key)
                self.leadership_log.append(key)
                self._last_leader_addr = node.addr

    def _deliver(self, origin: str | None, target: str, event) -> None:
        if isinstance(event, ScriptAction):
            event.fn()
            return
        if target in self.dead:
            return
        if origin is not None:
            if origin in self.dead:
                return
            if self._blocked(origin, target):
                return
        node = self.nodes.get(target)
        if node is None or isinstance(node, CAServer):
            return
        out = node.handle(event, self.tick)
        self._route_outbound(target, out)

    def _schedule_action(self, at_tick: int, fn) -> None:
        """Run a fault-injection or submission callable at an absolute tick."""
        with self.lock:
            self._seq += 1
            heapq.heappush(self._queue, (at_tick, self._seq, None, "script/action/0", ScriptAction(fn)))

    def advance_to(self, tick: int) -> None:
        with self.lock:
            while self._queue and self._queue[0][0] <= tick:
                deliver_at, _, origin, target, event = heapq.heappop(self._queue)
                self.tick = max(self.tick, deliver_at)
                self._deliver(origin, target, event)
            self.tick = max(self.tick, tick)

    def run_until(self, predicate, max_ticks: int) -> int:
        """Advance the simulation until predicate(network) holds.

        Returns ticks elapsed; raises TimeoutError at max_ticks.
        """
        with self.lock:
            start = self.tick
            if predicate(self):
                return 0
            while self._queue:
                next_tick = self._queue[0][0]
                if next_tick - start > max_ticks:
                    break
                self.advance_to(next_tick)
                if predicate(self):
                    return self.tick - start
            raise TimeoutError(f"predicate not reached within {max_ticks} ticks")

    # --- commit tracking ---

    def _on_peer_commit(self, peer: PeerNode, block: Block) -> None:
        for index, tx in enumerate(block.transactions):
            self.receipts[(peer.addr, tx.tx_id.hex())] = (
                block.header.number,
                index,
                block.validity_flags[index],
            )
        self.commit_cv.notify_all()

    def committed_anywhere(self, txid_hex: str) -> tuple[int, int, bool] | None:
        for (_, tid), receipt in self.receipts.items():
            if tid == txid_hex:
                return receipt
        return None

    def receipt_at(self, anchor_addr: str, txid_hex: str) -> tuple[int, int, bool] | None:
        return self.receipts.get((anchor_addr, txid_hex))

    def live_anchor_addrs(self) -> list[str]:
        return [a for a in self.anchor_addrs.values() if a not in self.dead]

    # --- submission ---

    def try_submit(self, tx: Transaction):
        """One submission attempt, following NotLeader hints up to 3 hops.

        Returns Accepted or None (no reachable leader right now).
        """
        with self.lock:
            live = [a for a in self.orderer_addrs if a not in self.dead]
            if not live:
                return None
            target = self._last_leader_addr if self._last_leader_addr in live else live[0]
            tried: set[str] = set()
            for _ in range(SUBMIT_HOPS):
                tried.add(target)
                node = self.nodes[target]
                result, out = node.client_submit(tx, self.tick)
                self._route_outbound(target, out)
                if isinstance(result, Accepted):
                    self._last_leader_addr = target
                    return result
                hint = result.hint
                hint_addr = None
                if hint is not None:
                    hint_addr = next(
                        (a for a in self.orderer_addrs if self.nodes[a].node_id == hint), None
                    )
                if hint_addr and hint_addr in live and hint_addr not in tried:
                    target = hint_addr
                else:
                    remaining = [a for a in live if a not in tried]
                    if not remaining:
                        return None
                    target = remaining[0]
            return None

    def submit_and_track(self, tx: Transaction) -> None:
        """Scenario-style submission: retried until committed somewhere."""
        with self.lock:
            self._deliver(None, self._client_addr, SubmitTask(tx))

    # --- fault injection ---

    def _resolve(self, node_key) -> str:
        if isinstance(node_key, str):
            if node_key in self.nodes:
                return node_key
            raise UnknownNode(repr(node_key))
        addr = self.node_keys.get(tuple(node_key))
        if addr is None:
            raise UnknownNode(repr(node_key))
        return addr

    def kill(self, node_key) -> None:
        with self.lock:
            self.dead.add(self._resolve(node_key))

    def partition(self, side_a, side_b) -> None:
        with self.lock:
            self.partitions.append(
                (
                    frozenset(self._resolve(k) for k in side_a),
                    frozenset(self._resolve(k) for k in side_b),
                )
            )

    def heal(self) -> None:
        with self.lock:
            self.partitions.clear()

    # --- introspection helpers ---

    def orderer(self, node_id: str) -> OrdererNode:
        for addr in self.orderer_addrs:
            if self.nodes[addr].node_id == node_id:
                return self.nodes[addr]
        raise UnknownNode(node_id)

    def current_leader(self) -> OrdererNode | None:
        for addr in self.orderer_addrs:
            if addr in self.dead:
                continue
            node = self.nodes[addr]
            if node.raft.role == LEADER:
                return node
        return None

    def anchor(self, org_name: str) -> PeerNode:
        return self.nodes[self.anchor_addrs[org_name]]

    def peers(self) -> list[PeerNode]:
        return [n for n in self.nodes.values() if isinstance(n, PeerNode)]

    def live_peers(self) -> list[PeerNode]:
        return [p for p in self.peers() if p.addr not in self.dead]

    def election_safety_holds(self) -> bool:
        terms: dict[int, str] = {}
        for term, node_id in self.leadership_log:
            if term in terms and terms[term] != node_id:
                return False
            terms[term] = node_id
        return True

    def validate_all(self) -> dict[str, object]:
        return {p.addr: validate_chain(p.chain) for p in self.peers()}

    def chain_bytes(self, addr: str) -> bytes:
        node = self.nodes[addr]
        return b"".join(block.encoded() for block in node.chain)

    # --- live mode ---

    def start_live(self) -> None:
        if self._runner is None:
            self._runner = _LiveRunner(self)
            self._runner.start()

    def stop_live(self) -> None:
        if self._runner is not None:
            self._runner.stop()
            self._runner.join(timeout=5)
            self._runner = None

    def wait_for_commit(self, txid_hex: str, anchors: list[str], timeout_ms: int):
        """Block (live mode) until every given live anchor committed the tx."""
        deadline = time.monotonic() + timeout_ms / 1000.0
        with self.commit_cv:
            while True:
                live = [a for a in anchors if a not in self.dead]
                receipts = [self.receipts.get((a, txid_hex)) for a in live]
                if live and all(r is not None for r in receipts):
                    return receipts[0]
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    raise TimeoutError(f"transaction {txid_hex[:12]} not committed in {timeout_ms} ms")
                self.commit_cv.wait(timeout=min(remaining, 0.05))


class _LiveRunner(threading.Thread):
    """Drives ticks as wall-clock milliseconds for gateway-backed runs."""

    def __init__(self, network: Network):
        super().__init__(daemon=True, name="healthdlt-network")
        self.network = network
        self._halt = threading.Event()

    def run(self) -> None:
        started = time.monotonic()
        while not self._halt.is_set():
            now_tick = int((time.monotonic() - started) * 1000)
            self.network.advance_to(now_tick)
            time.sleep(0.001)

    def stop(self) -> None:
        self._halt.set()


def start(config: TopologyConfig, data_dir: str | None = None, time_base: int = 0) -> Network:
    """Instantiate the whole topology; deterministic under config.seed."""
    return Network(config, data_dir=data_dir, time_base=time_base)
