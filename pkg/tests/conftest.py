import random

import pytest

from healthdlt.harness import load_topology, start
from healthdlt.harness.scenario import make_raw_tx, make_scenario_card


@pytest.fixture
def paper_topology():
    return load_topology("topology-paper")


@pytest.fixture
def ft_topology():
    return load_topology("topology-ft")


@pytest.fixture
def sim_network(ft_topology):
    """Fresh 3-orderer simulation network with an elected leader."""
    network = start(ft_topology)
    network.run_until(lambda n: n.current_leader() is not None, 5000)
    return network


@pytest.fixture
def scenario_card(sim_network):
    return make_scenario_card(sim_network, random.Random(99))


def raw_tx(card, key, value, nonce_int=0):
    return make_raw_tx(card, key, value, nonce=nonce_int.to_bytes(16, "big"))
