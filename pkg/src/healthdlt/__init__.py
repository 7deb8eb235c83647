"""Permissioned healthcare ledger.

A self-contained permissioned blockchain for a national health service:
per-organization certificate authorities issue digital health cards,
transactions flow endorse -> order -> commit over a raft-ordered hash
chain, healthcare smart contracts enforce the three stakeholder roles,
an HTTP gateway fronts the network, and a load-test tool scores the
gateway with APDEX.
"""

__version__ = "0.1.0"
