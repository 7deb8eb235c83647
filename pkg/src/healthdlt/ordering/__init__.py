"""Ordering service: raft consensus over transactions plus block cutting."""

from .raft import (
    ELECTION_TIMEOUT_RANGE,
    HEARTBEAT_INTERVAL,
    AppendEntries,
    AppendReply,
    Accepted,
    ElectionTimeout,
    HeartbeatTick,
    LogEntry,
    RaftNode,
    RequestVote,
    ResetElectionTimer,
    ScheduleHeartbeat,
    Send,
    VoteReply,
    majority,
    step,
    submit,
)
from .cutter import BlockCutPolicy, CutMarker, PendingTx, build_block, cut_block
from .messages import SimMessage, payload_from_wire, payload_to_wire

__all__ = [
    "ELECTION_TIMEOUT_RANGE",
    "HEARTBEAT_INTERVAL",
    "Accepted",
    "AppendEntries",
    "AppendReply",
    "BlockCutPolicy",
    "CutMarker",
    "ElectionTimeout",
    "HeartbeatTick",
    "LogEntry",
    "PendingTx",
    "RaftNode",
    "RequestVote",
    "ResetElectionTimer",
    "ScheduleHeartbeat",
    "Send",
    "SimMessage",
    "VoteReply",
    "build_block",
    "cut_block",
    "majority",
    "payload_from_wire",
    "payload_to_wire",
    "step",
    "submit",
]
