"""Raft leader election and log replication as a pure state machine.

step() consumes one event and returns the node plus everything it wants to
send or schedule; it draws no randomness and reads no clock, so a fixed
event sequence always replays to the same state. Election timeout jitter
lives in the scheduler, which turns ResetElectionTimer intents into timer
events with a seeded draw from ELECTION_TIMEOUT_RANGE.

Log entries carry either a transaction or a block-cut marker (see
cutter.py); raft itself treats payloads as opaque.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..envelope import MAX_TX_BYTES, Transaction
from ..errors import NotLeader, OversizeError

ELECTION_TIMEOUT_RANGE = (150, 300)  # logical ticks
HEARTBEAT_INTERVAL = 50

FOLLOWER = "follower"
CANDIDATE = "candidate"
LEADER = "leader"


@dataclass
class LogEntry:
    term: int
    payload: object  # Transaction | CutMarker


# --- events ---

@dataclass
class ElectionTimeout:
    epoch: int


@dataclass
class HeartbeatTick:
    pass


@dataclass
class RequestVote:
    term: int
    candidate_id: str
    last_log_index: int
    last_log_term: int


@dataclass
class VoteReply:
    term: int
    voter_id: str
    granted: bool


@dataclass
class AppendEntries:
    term: int
    leader_id: str
    prev_log_index: int
    prev_log_term: int
    entries: list
    leader_commit: int


@dataclass
class AppendReply:
    term: int
    follower_id: str
    success: bool
    match_index: int


# --- outbound intents ---

@dataclass
class Send:
    to: str
    msg: object


@dataclass
class ResetElectionTimer:
    epoch: int


@dataclass
class ScheduleHeartbeat:
    pass


@dataclass
class Accepted:
    log_index: int


def majority(cluster_size: int) -> int:
    return cluster_size // 2 + 1


@dataclass
class RaftNode:
    node_id: str
    peers: list[str]  # other nodes in the ordering cluster
    current_term: int = 0
    voted_for: str | None = None
    role: str = FOLLOWER
    log: list[LogEntry] = field(default_factory=list)
    commit_index: int = -1
    votes: set[str] = field(default_factory=set)
    next_index: dict[str, int] = field(default_factory=dict)
    match_index: dict[str, int] = field(default_factory=dict)
    timer_epoch: int = 0
    leader_hint: str | None = None

    @property
    def cluster_size(self) -> int:
        return len(self.peers) + 1

    def last_log_index(self) -> int:
        return len(self.log) - 1

    def last_log_term(self) -> int:
        return self.log[-1].term if self.log else -1


def _reset_timer(node: RaftNode) -> ResetElectionTimer:
    node.timer_epoch += 1
    return ResetElectionTimer(node.timer_epoch)


def _become_follower(node: RaftNode, term: int) -> None:
    node.current_term = term
    node.role = FOLLOWER
    node.voted_for = None
    node.votes = set()


def _become_leader(node: RaftNode, out: list) -> None:
    node.role = LEADER
    node.leader_hint = node.node_id
    node.next_index = {p: len(node.log) for p in node.peers}
    node.match_index = {p: -1 for p in node.peers}
    out.extend(_replicate_to_all(node))
    out.append(ScheduleHeartbeat())


def _append_entries_for(node: RaftNode, peer: str) -> AppendEntries:
    nxt = node.next_index[peer]
    prev_index = nxt - 1
    prev_term = node.log[prev_index].term if prev_index >= 0 else -1
    return AppendEntries(
        term=node.current_term,
        leader_id=node.node_id,
        prev_log_index=prev_index,
        prev_log_term=prev_term,
        entries=node.log[nxt:],
        leader_commit=node.commit_index,
    )


def _replicate_to_all(node: RaftNode) -> list[Send]:
    return [Send(p, _append_entries_for(node, p)) for p in node.peers]


def _advance_commit(node: RaftNode) -> bool:
    """Leader-side commit rule: majority match in the current term."""
    advanced = False
    for n in range(node.last_log_index(), node.commit_index, -1):
        if node.log[n].term != node.current_term:
            continue
        acks = 1 + sum(1 for m in node.match_index.values() if m >= n)
        if acks >= majority(node.cluster_size):
            node.commit_index = n
            advanced = True
            break
    return advanced


def step(node: RaftNode, event) -> tuple[RaftNode, list]:
    """Apply one event; returns (node, outbound Sends and timer intents)."""
    out: list = []

    if isinstance(event, ElectionTimeout):
        if event.epoch != node.timer_epoch or node.role == LEADER:
            return node, out
        node.current_term += 1
        node.role = CANDIDATE
        node.voted_for = node.node_id
        node.votes = {node.node_id}
        out.append(_reset_timer(node))
        if len(node.votes) >= majority(node.cluster_size):
            _become_leader(node, out)
        else:
            rv = RequestVote(
                term=node.current_term,
                candidate_id=node.node_id,
                last_log_index=node.last_log_index(),
                last_log_term=node.last_log_term(),
            )
            out.extend(Send(p, rv) for p in node.peers)

    elif isinstance(event, HeartbeatTick):
        if node.role == LEADER:
            out.extend(_replicate_to_all(node))
            out.append(ScheduleHeartbeat())

    elif isinstance(event, RequestVote):
        if event.term > node.current_term:
            _become_follower(node, event.term)
        granted = False
        if event.term == node.current_term and node.role != LEADER:
            up_to_date = event.last_log_term > node.last_log_term() or (
                event.last_log_term == node.last_log_term()
                and event.last_log_index >= node.last_log_index()
            )
            if node.voted_for in (None, event.candidate_id) and up_to_date:
                granted = True
                node.voted_for = event.candidate_id
                out.append(_reset_timer(node))
        out.append(
            Send(event.candidate_id, VoteReply(node.current_term, node.node_id, granted))
        )

    elif isinstance(event, VoteReply):
        if event.term > node.current_term:
            _become_follower(node, event.term)
        elif (
            node.role == CANDIDATE
            and event.term == node.current_term
            and event.granted
        ):
            node.votes.add(event.voter_id)
            if len(node.votes) >= majority(node.cluster_size):
                _become_leader(node, out)

    elif isinstance(event, AppendEntries):
        if event.term > node.current_term:
            _become_follower(node, event.term)
        if event.term < node.current_term:
            out.append(
                Send(event.leader_id, AppendReply(node.current_term, node.node_id, False, -1))
            )
            return node, out
        # valid leader for this term
        node.role = FOLLOWER
        node.leader_hint = event.leader_id
        node.votes = set()
        out.append(_reset_timer(node))
        prev = event.prev_log_index
        if prev >= 0 and (prev >= len(node.log) or node.log[prev].term != event.prev_log_term):
            out.append(
                Send(event.leader_id, AppendReply(node.current_term, node.node_id, False, -1))
            )
            return node, out
        for i, entry in enumerate(event.entries):
            index = prev + 1 + i
            if index < len(node.log):
                if node.log[index].term != entry.term:
                    del node.log[index:]
                    node.log.extend(event.entries[i:])
                    break
            else:
                node.log.extend(event.entries[i:])
                break
        match = prev + len(event.entries)
        if event.leader_commit > node.commit_index:
            node.commit_index = min(event.leader_commit, node.last_log_index())
        out.append(
            Send(event.leader_id, AppendReply(node.current_term, node.node_id, True, match))
        )

    elif isinstance(event, AppendReply):
        if event.term > node.current_term:
            _become_follower(node, event.term)
        elif node.role == LEADER and event.term == node.current_term:
            if event.success:
                prev_match = node.match_index.get(event.follower_id, -1)
                node.match_index[event.follower_id] = max(prev_match, event.match_index)
                node.next_index[event.follower_id] = node.match_index[event.follower_id] + 1
                _advance_commit(node)
            else:
                node.next_index[event.follower_id] = max(
                    0, node.next_index[event.follower_id] - 1
                )
                out.append(
                    Send(event.follower_id, _append_entries_for(node, event.follower_id))
                )

    else:
        raise TypeError(f"unknown raft event {type(event).__name__}")

    return node, out


def submit(node: RaftNode, payload) -> tuple[object, list]:
    """Append a payload on the leader; followers answer NotLeader with a hint.

    Returns (Accepted | NotLeader, outbound sends). A transaction whose
    encoding alone exceeds the block cap is refused outright.
    """
    if node.role != LEADER:
        return NotLeader(hint=node.leader_hint), []
    if isinstance(payload, Transaction) and payload.encoded_size() > MAX_TX_BYTES:
        raise OversizeError(
            f"transaction encodes to {payload.encoded_size()} bytes (cap {MAX_TX_BYTES})"
        )
    node.log.append(LogEntry(node.current_term, payload))
    _advance_commit(node)  # single-node clusters commit immediately
    return Accepted(node.last_log_index()), _replicate_to_all(node)
