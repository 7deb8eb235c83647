"""Topology configuration: which orgs, peers, orderers, and ports exist.

Two configurations ship with the package: topology-paper (three orgs, two
orderers, the original port plan) and topology-ft (a third orderer so the
ordering service survives one failure).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources

from .. import canonical
from ..errors import ConfigError

STAKEHOLDER_TYPES = ("authority", "doctor", "nagorik")


@dataclass
class OrgSpec:
    name: str
    stakeholder: str
    anchor_port: int
    gossip_ports: list[int]
    ca_port: int
    state_port: int


@dataclass
class OrdererSpec:
    id: str
    port: int


@dataclass
class TopologyConfig:
    channel: str
    orgs: list[OrgSpec]
    orderers: list[OrdererSpec]
    orderer_ca_port: int
    gateway_internal_port: int
    gateway_external_port: int
    seed: int = 0

    def stakeholder_of(self, org_name: str) -> str | None:
        for org in self.orgs:
            if org.name == org_name:
                return org.stakeholder
        return None

    def org_of_stakeholder(self, stakeholder: str) -> OrgSpec:
        for org in self.orgs:
            if org.stakeholder == stakeholder:
                return org
        raise ConfigError("orgs", f"no org with stakeholder {stakeholder!r}")

    def validate(self) -> None:
        if not self.orgs:
            raise ConfigError("orgs", "at least one organization is required")
        if not self.orderers:
            raise ConfigError("orderers", "at least one orderer is required")
        seen_ports: dict[int, str] = {}

        def claim(port, owner):
            if not isinstance(port, int) or port <= 0:
                raise ConfigError(owner, f"port must be a positive integer, got {port!r}")
            if port in seen_ports:
                raise ConfigError(owner, f"port {port} already used by {seen_ports[port]}")
            seen_ports[port] = owner

        for org in self.orgs:
            if org.stakeholder not in STAKEHOLDER_TYPES:
                raise ConfigError(
                    f"orgs[{org.name}].stakeholder",
                    f"must be one of {STAKEHOLDER_TYPES}, got {org.stakeholder!r}",
                )
            claim(org.anchor_port, f"orgs[{org.name}].anchor_port")
            for gp in org.gossip_ports:
                claim(gp, f"orgs[{org.name}].gossip_ports")
            claim(org.ca_port, f"orgs[{org.name}].ca_port")
            claim(org.state_port, f"orgs[{org.name}].state_port")
        for orderer in self.orderers:
            claim(orderer.port, f"orderers[{orderer.id}].port")
        claim(self.orderer_ca_port, "orderer_ca_port")
        claim(self.gateway_internal_port, "gateway_internal_port")
        claim(self.gateway_external_port, "gateway_external_port")


def _from_dict(doc: dict) -> TopologyConfig:
    try:
        config = TopologyConfig(
            channel=doc.get("channel", "healthcare"),
            orgs=[
                OrgSpec(
                    name=o["name"],
                    stakeholder=o["stakeholder"],
                    anchor_port=o["anchor_port"],
                    gossip_ports=list(o["gossip_ports"]),
                    ca_port=o["ca_port"],
                    state_port=o["state_port"],
                )
                for o in doc.get("orgs", [])
            ],
            orderers=[OrdererSpec(id=o["id"], port=o["port"]) for o in doc.get("orderers", [])],
            orderer_ca_port=doc["orderer_ca_port"],
            gateway_internal_port=doc["gateway_internal_port"],
            gateway_external_port=doc["gateway_external_port"],
            seed=int(doc.get("seed", 0)),
        )
    except KeyError as exc:
        raise ConfigError(str(exc.args[0]), "field is missing") from exc
    config.validate()
    return config


def load_topology(path_or_name: str) -> TopologyConfig:
    """Load and validate a topology file; bundled names resolve built-ins."""
    if os.path.exists(path_or_name):
        with open(path_or_name, "rb") as fh:
            raw = fh.read()
    else:
        resource = resources.files("healthdlt").joinpath(f"topologies/{path_or_name}.json")
        if not resource.is_file():
            raise ConfigError("path", f"no such topology file or bundled name: {path_or_name}")
        raw = resource.read_bytes()
    try:
        doc = canonical.decode(raw)
    except ValueError as exc:
        raise ConfigError("file", f"not valid JSON: {exc}") from exc
    return _from_dict(doc)
