"""Deterministic in-process network: orgs, peers, orderers, fault injection."""

from .topology import OrdererSpec, OrgSpec, TopologyConfig, load_topology
from .network import Network, start
from .scenario import run_scenario

__all__ = [
    "Network",
    "OrdererSpec",
    "OrgSpec",
    "TopologyConfig",
    "load_topology",
    "run_scenario",
    "start",
]
