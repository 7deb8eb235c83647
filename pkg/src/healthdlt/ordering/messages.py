"""Wire form for ordering-service traffic.

SimMessage is the envelope both transports use: the in-memory simulator
passes the objects around directly, the TCP transport sends each one as a
length-prefixed canonical encoding produced here.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..envelope import Transaction
from .cutter import CutMarker
from .raft import (
    AppendEntries,
    AppendReply,
    ElectionTimeout,
    HeartbeatTick,
    LogEntry,
    RequestVote,
    VoteReply,
)


@dataclass
class SimMessage:
    from_node: str
    to: str
    payload: object
    deliver_at: int


def _entry_to_wire(entry: LogEntry) -> dict:
    if isinstance(entry.payload, Transaction):
        payload = {"kind": "tx", "tx": entry.payload.to_dict()}
    elif isinstance(entry.payload, CutMarker):
        payload = {"kind": "cut", "marker": entry.payload.to_dict()}
    else:
        raise TypeError(f"unencodable log payload {type(entry.payload).__name__}")
    return {"term": entry.term, "payload": payload}


def _entry_from_wire(d: dict) -> LogEntry:
    payload = d["payload"]
    if payload["kind"] == "tx":
        return LogEntry(int(d["term"]), Transaction.from_dict(payload["tx"]))
    if payload["kind"] == "cut":
        return LogEntry(int(d["term"]), CutMarker.from_dict(payload["marker"]))
    raise ValueError(f"unknown log payload kind {payload['kind']!r}")


def payload_to_wire(msg) -> dict:
    if isinstance(msg, RequestVote):
        return {
            "type": "request_vote",
            "term": msg.term,
            "candidate_id": msg.candidate_id,
            "last_log_index": msg.last_log_index,
            "last_log_term": msg.last_log_term,
        }
    if isinstance(msg, VoteReply):
        return {
            "type": "vote_reply",
            "term": msg.term,
            "voter_id": msg.voter_id,
            "granted": msg.granted,
        }
    if isinstance(msg, AppendEntries):
        return {
            "type": "append_entries",
            "term": msg.term,
            "leader_id": msg.leader_id,
            "prev_log_index": msg.prev_log_index,
            "prev_log_term": msg.prev_log_term,
            "entries": [_entry_to_wire(e) for e in msg.entries],
            "leader_commit": msg.leader_commit,
        }
    if isinstance(msg, AppendReply):
        return {
            "type": "append_reply",
            "term": msg.term,
            "follower_id": msg.follower_id,
            "success": msg.success,
            "match_index": msg.match_index,
        }
    if isinstance(msg, ElectionTimeout):
        return {"type": "election_timeout", "epoch": msg.epoch}
    if isinstance(msg, HeartbeatTick):
        return {"type": "heartbeat_tick"}
    raise TypeError(f"unencodable message {type(msg).__name__}")


def payload_from_wire(d: dict):
    kind = d["type"]
    if kind == "request_vote":
        return RequestVote(
            term=int(d["term"]),
            candidate_id=d["candidate_id"],
            last_log_index=int(d["last_log_index"]),
            last_log_term=int(d["last_log_term"]),
        )
    if kind == "vote_reply":
        return VoteReply(term=int(d["term"]), voter_id=d["voter_id"], granted=bool(d["granted"]))
    if kind == "append_entries":
        return AppendEntries(
            term=int(d["term"]),
            leader_id=d["leader_id"],
            prev_log_index=int(d["prev_log_index"]),
            prev_log_term=int(d["prev_log_term"]),
            entries=[_entry_from_wire(e) for e in d["entries"]],
            leader_commit=int(d["leader_commit"]),
        )
    if kind == "append_reply":
        return AppendReply(
            term=int(d["term"]),
            follower_id=d["follower_id"],
            success=bool(d["success"]),
            match_index=int(d["match_index"]),
        )
    if kind == "election_timeout":
        return ElectionTimeout(epoch=int(d["epoch"]))
    if kind == "heartbeat_tick":
        return HeartbeatTick()
    raise ValueError(f"unknown message type {kind!r}")
