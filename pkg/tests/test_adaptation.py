import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import build_net
from overlaysim import (
    AdaptationPolicy,
    ConfigurationError,
    RewiringAction,
    SearchRequest,
    UnknownNodeError,
    adapt_node,
    best_candidate,
    distance,
    generate_random_topology,
    guided_search,
    random_description,
    worst_neighbor,
)


def learn(net, a, *peers):
    for p in peers:
        net.nodes[a].cache.observe(p, net.description(p))


def mean_neighbor_distance(net, a):
    d = net.description(a)
    return sum(distance(d, net.description(v)) for v in net.neighbors(a)) / net.degree(a)


def test_worst_neighbor_examples():
    net = build_net([(0, 0, 0), (1, 1, 0), (4, 4, 2)], [(0, 1), (0, 2)])
    assert worst_neighbor(net, 0) == 2
    assert worst_neighbor(net, 1) == 0
    tie = build_net([(0, 0, 0), (4, 3, 0), (0, 3, 4)], [(0, 1), (0, 2)])
    assert worst_neighbor(tie, 0) == 2
    with pytest.raises(UnknownNodeError):
        worst_neighbor(net, 3)


def test_best_candidate_examples():
    net = build_net([(0, 0, 0), (1, 0, 0), (2, 2, 0), (4, 4, 4)], [(0, 3), (1, 3), (2, 3)])
    assert best_candidate(net, 0) is None
    learn(net, 0, 3)
    assert best_candidate(net, 0) is None  # only current neighbours
    learn(net, 0, 1, 2)
    assert best_candidate(net, 0) == 1


def test_best_candidate_skips_full_peers():
    # node 1 is the closest cached peer but already has 3 links
    net = build_net([(0, 0, 0), (1, 0, 0), (2, 2, 0), (4, 4, 4), (3, 3, 3)],
                    [(0, 3), (1, 3), (1, 2), (1, 4)], max_connections=3)
    learn(net, 0, 1, 2)
    assert best_candidate(net, 0) == 2


def test_adapt_swap():
    # node 0: protected hop 1 (d=2), worst 2 (d=10); cached candidate 4 (d=1)
    net = build_net([(0, 0, 0), (1, 1, 0), (4, 4, 2), (3, 3, 3), (1, 0, 0)],
                    [(0, 1), (0, 2), (2, 3), (3, 4)])
    learn(net, 0, 4)
    action = adapt_node(net, 0, protected=1)
    assert action == RewiringAction(0, 2, 4)
    assert net.neighbors(0) == {1, 4}
    assert net.degree(2) == 1 and net.audit() == []


def test_adapt_requires_strict_improvement():
    net = build_net([(0, 0, 0), (1, 0, 0), (4, 1, 0), (2, 2, 1), (3, 3, 3)],
                    [(0, 1), (0, 2), (2, 4), (3, 4)])
    learn(net, 0, 3)
    assert distance(net.description(0), net.description(2)) == distance(net.description(0), net.description(3)) == 5
    before = net.edges()
    assert adapt_node(net, 0, protected=1) is None
    assert net.edges() == before


def test_adapt_guards_min_degree():
    net = build_net([(0, 0, 0), (1, 0, 0), (4, 4, 2), (1, 1, 0), (2, 2, 2)],
                    [(0, 1), (0, 2), (3, 4), (1, 4)])
    learn(net, 0, 3)
    assert net.degree(2) == 1
    before = net.edges()
    assert adapt_node(net, 0, protected=1) is None
    assert net.edges() == before


def test_adapt_never_drops_protected():
    # the protected hop is the worst neighbour; the next worst goes instead
    net = build_net([(0, 0, 0), (4, 4, 4), (2, 2, 0), (1, 0, 0), (3, 3, 3)],
                    [(0, 1), (0, 2), (2, 4), (1, 4), (3, 4)])
    learn(net, 0, 3)
    assert adapt_node(net, 0, protected=1) == RewiringAction(0, 2, 3)
    assert 1 in net.neighbors(0)


def test_adapt_without_other_neighbours():
    net = build_net([(0, 0, 0), (4, 4, 4), (1, 0, 0)], [(0, 1), (1, 2)])
    learn(net, 0, 2)
    assert adapt_node(net, 0, protected=1) is None


@pytest.mark.parametrize("kwargs", [dict(dropped=1), dict(added=1), dict(dropped=2, added=2)])
def test_rewiring_action_invariants(kwargs):
    with pytest.raises(ConfigurationError):
        RewiringAction(0, **kwargs)


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_adapt_properties_on_random_runs(seed):
    rng = random.Random(seed)
    net = generate_random_topology(30, 4, rng)
    for a in range(30):
        learn(net, a, *rng.sample([p for p in range(30) if p != a], 6))
    for _ in range(60):
        a = rng.randrange(30)
        protected = rng.choice(sorted(net.neighbors(a)))
        deg, mean = net.degree(a), mean_neighbor_distance(net, a)
        action = adapt_node(net, a, protected)
        assert net.degree(a) == deg
        assert protected in net.neighbors(a)
        if action is not None:
            assert mean_neighbor_distance(net, a) < mean
        assert net.audit() == []


def test_policy_logs_swaps_during_search():
    rng = random.Random(3)
    net = generate_random_topology(50, 15, rng)
    start = net.mean_neighbor_distance()
    policy = AdaptationPolicy()
    for _ in range(20):
        for origin in range(50):
            guided_search(net, SearchRequest(origin, random_description(rng), 0), policy)
    assert len(policy) > 0
    assert all(isinstance(a, RewiringAction) for a in policy.actions)
    assert net.audit() == []
    assert net.mean_neighbor_distance() < start
