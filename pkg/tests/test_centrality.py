import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_net
from oracles import enumerated_betweenness, random_connected_edges, tree_pair_counts
from leadnet.centrality import (
    centrality_report,
    centralization_fraction,
    degree_centralization,
    edge_distance,
    weighted_betweenness,
)
from leadnet.errors import DisconnectedError, TooSmallError


def test_edge_distance():
    assert edge_distance(0) == 1.0
    assert edge_distance(99) == pytest.approx(0.01, abs=1e-15)
    assert edge_distance(10) > edge_distance(20)


def test_path():
    bc = weighted_betweenness(make_net({("a", "b"): 7, ("b", "c"): 7}))
    assert bc == {"a": 0.0, "b": 1.0, "c": 0.0}


def test_star_three_leaves():
    bc = weighted_betweenness(make_net({("a", "b"): 10, ("b", "c"): 20, ("b", "d"): 5}))
    assert bc == {"a": 0.0, "b": 3.0, "c": 0.0, "d": 0.0}


def test_equal_square_splits_paths():
    # two equally short a-c paths, via b and via d
    bc = weighted_betweenness(make_net({("a", "b"): 4, ("b", "c"): 4, ("c", "d"): 4, ("a", "d"): 4}))
    assert bc == pytest.approx({"a": 0.5, "b": 0.5, "c": 0.5, "d": 0.5}, abs=1e-12)


def test_weighted_shortcut():
    # strong a-b-c partnerships make the two-hop route shorter than the direct weak edge
    net = make_net({("a", "b"): 99, ("b", "c"): 99, ("a", "c"): 0})
    assert weighted_betweenness(net)["b"] == 1.0


def test_disconnected():
    net = make_net({("a", "b"): 1, ("b", "c"): 1, ("d", "e"): 1})
    with pytest.raises(DisconnectedError):
        weighted_betweenness(net)
    bc = weighted_betweenness(net, allow_disconnected=True)
    assert bc == {"a": 0.0, "b": 1.0, "c": 0.0, "d": 0.0, "e": 0.0}


def test_enumeration_oracle_fixed_cases():
    cases = [
        {("a", "b"): 1, ("b", "c"): 1, ("c", "d"): 1, ("d", "a"): 1, ("a", "c"): 0},
        {("a", "b"): 0, ("b", "c"): 0, ("c", "d"): 0, ("d", "e"): 0, ("e", "a"): 0},
        {("a", "b"): 3, ("a", "c"): 1, ("b", "d"): 1, ("c", "d"): 3, ("d", "e"): 0},
    ]
    for edges in cases:
        net = make_net(edges)
        ref = enumerated_betweenness(net.nodes, net.edges)
        got = weighted_betweenness(net)
        for n in net.nodes:
            assert got[n] == pytest.approx(ref[n], abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**32 - 1), st.sampled_from([0, 2, 60]))
def test_enumeration_oracle_property(n, seed, max_w):
    rng = np.random.default_rng(seed)
    nodes, edges = random_connected_edges(rng, n, 0.3, max_w)
    net = make_net(edges)
    ref = enumerated_betweenness(nodes, edges)
    got = weighted_betweenness(net)
    assert max(abs(got[v] - ref[v]) for v in nodes) <= 1e-9


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 11), st.integers(0, 2**32 - 1))
def test_tree_identity(n, seed):
    rng = np.random.default_rng(seed)
    nodes, edges = random_connected_edges(rng, n, 0.0, 200)
    expected = tree_pair_counts(nodes, list(edges))
    got = weighted_betweenness(make_net(edges))
    for v in nodes:
        assert got[v] == pytest.approx(expected[v], abs=1e-9)
        if len([e for e in edges if v in e]) == 1:
            assert got[v] == 0.0


def test_scale_argmax_on_fixtures():
    fixtures = [
        {("a", "b"): 10, ("b", "c"): 20, ("b", "d"): 5, ("d", "e"): 30},
        {("a", "b"): 50, ("b", "c"): 3, ("c", "d"): 40, ("a", "c"): 2, ("d", "e"): 8, ("e", "f"): 1},
        {("a", "b"): 12, ("a", "c"): 7, ("a", "d"): 0, ("d", "e"): 22, ("e", "f"): 9, ("c", "f"): 1},
    ]
    checked = 0
    for edges in fixtures:
        for factor in (2, 3, 10):
            base = weighted_betweenness(make_net(edges))
            top = sorted(base.values(), reverse=True)
            if top[0] - top[1] <= 10 * 1e-9:
                continue
            scaled = weighted_betweenness(make_net({k: w * factor for k, w in edges.items()}))
            assert max(base, key=base.get) == max(scaled, key=scaled.get)
            checked += 1
    assert checked > 0


def _star(n):
    return make_net({("hub", f"leaf{k:02d}"): k for k in range(n - 1)})


def _regular(n, k):
    edges = {}
    for i in range(n):
        for step in range(1, k // 2 + 1):
            j = (i + step) % n
            edges[(f"v{i:02d}", f"v{j:02d}")] = i + j
        if k % 2:
            j = (i + n // 2) % n
            edges[tuple(sorted((f"v{i:02d}", f"v{j:02d}")))] = 1
    return make_net(edges)


@pytest.mark.parametrize("n", range(3, 12))
def test_omega_star_and_regular(n):
    assert degree_centralization(_star(n)) == 1.0
    assert centralization_fraction(list(_star(n).degree().values())) == 1
    for k in range(2, n):
        if (n * k) % 2:
            continue
        net = _regular(n, k)
        assert set(net.degree().values()) == {k}
        assert degree_centralization(net) == 0.0


def test_omega_cycle_five():
    assert degree_centralization(make_net({("a", "b"): 1, ("b", "c"): 1, ("c", "d"): 1, ("d", "e"): 1, ("e", "a"): 1})) == 0.0


def test_omega_chain_four():
    net = make_net({("a", "b"): 1, ("b", "c"): 1, ("c", "d"): 1})
    assert centralization_fraction(list(net.degree().values())) == Fraction(1, 3)
    assert degree_centralization(net) == 1 / 3


def test_omega_too_small():
    with pytest.raises(TooSmallError):
        degree_centralization(make_net({("a", "b"): 1}))
    assert centrality_report(make_net({("a", "b"): 1})).omega is None


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 11), st.integers(0, 2**32 - 1), st.floats(0, 1))
def test_omega_bounds(n, seed, p):
    rng = np.random.default_rng(seed)
    _, edges = random_connected_edges(rng, n, p, 5)
    net = make_net(edges)
    omega = centralization_fraction(list(net.degree().values()))
    assert 0 <= omega <= 1
    degrees = sorted(net.degree().values())
    is_star = degrees == [1] * (n - 1) + [n - 1]
    assert (omega == 1) == is_star


def test_report_json_sorted():
    rep = centrality_report(make_net({("z", "b"): 1, ("b", "a"): 2}))
    assert list(rep.to_dict()["betweenness"]) == ["a", "b", "z"]
    assert rep.n_players == 3
