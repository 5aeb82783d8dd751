from itertools import combinations

import pytest

from plabic.fixtures import builtin
from plabic.matchings import (
    InvalidFlow,
    Flow,
    decompose,
    enumerate_flows,
    enumerate_matchings,
    enumerate_orientations,
    matching_adjacent,
    matching_from_edges,
    matching_to_orientation,
    orientation_to_matching,
    reverse_flow,
)


@pytest.fixture(scope="module")
def triv():
    return builtin("triv-path").graph


@pytest.fixture(scope="module")
def g24():
    return builtin("g24").graph


def test_triv_matchings(triv):
    ms = enumerate_matchings(triv)
    assert [m.edges for m in ms] == [("e1", "e3"), ("e2",)]


def test_counts():
    assert len(enumerate_matchings(builtin("g24").graph)) == 7
    assert len(enumerate_matchings(builtin("fig2-p1p1").graph)) == 4
    assert len(enumerate_orientations(builtin("g24").graph)) == 7


def test_g24_matchings_and_sources(g24):
    got = {m.edges: tuple(sorted(m.sources)) for m in enumerate_matchings(g24)}
    assert got == {
        ("e1", "e2", "e3", "e4"): (1, 3),
        ("e1", "e2", "e7"): (1, 4),
        ("e1", "e4", "e6"): (1, 2),
        ("e2", "e3", "e8"): (3, 4),
        ("e3", "e4", "e5"): (2, 3),
        ("e5", "e7"): (2, 4),
        ("e6", "e8"): (2, 4),
    }


def test_matching_orientation_sources(triv):
    m13 = matching_from_edges(triv, ["e1", "e3"])
    m2 = matching_from_edges(triv, ["e2"])
    assert matching_to_orientation(triv, m13).sources == {1}
    assert matching_to_orientation(triv, m2).sources == {2}


def test_round_trip(g24):
    for m in enumerate_matchings(g24):
        o = matching_to_orientation(g24, m)
        assert orientation_to_matching(g24, o) == m
        assert len(o.sources) == 2


def test_orientation_is_perfect(g24):
    for o in enumerate_orientations(g24):
        tail = o.tail
        for v, c in g24.vertices:
            outs = sum(tail[e] == v for e in g24.incident[v])
            ins = len(g24.incident[v]) - outs
            assert (outs if c == "black" else ins) == 1


def test_triv_flows(triv):
    o = [o for o in enumerate_orientations(triv) if o.sources == {1}][0]
    flows = enumerate_flows(triv, o)
    assert len(flows) == 2
    assert flows[0].is_empty and flows[0].exponent == (0, 0, 0)
    walk = flows[1]
    assert walk.components[0].kind == "walk"
    assert (walk.components[0].source, walk.components[0].destination) == (1, 2)
    assert reverse_flow(triv, o, walk).sources == {2}


def test_g24_flows_reach_all_orientations(g24):
    all_o = {o.tails for o in enumerate_orientations(g24)}
    for o in enumerate_orientations(g24):
        flows = enumerate_flows(g24, o)
        assert len(flows) == 7
        assert any(f.is_empty for f in flows)
        assert {reverse_flow(g24, o, f).tails for f in flows} == all_o
        assert reverse_flow(g24, o, flows[0]) == o


def test_flow_destination_sets(g24):
    o = enumerate_orientations(g24)[0]
    for f in enumerate_flows(g24, o):
        srcs = {c.source for c in f.components if c.kind == "walk"}
        dsts = {c.destination for c in f.components if c.kind == "walk"}
        assert srcs <= o.sources
        assert not dsts & o.sources
        assert f.destination_set == (o.sources - srcs) | dsts


def test_invalid_flow_rejected(g24):
    o = enumerate_orientations(g24)[0]
    # two edges at one vertex that are both outgoing or both incoming
    for a, b in combinations(g24.edge_ids, 2):
        mask = g24.mask_of([a, b])
        try:
            decompose(g24, o, mask)
        except InvalidFlow:
            bogus = Flow(mask, (), frozenset(), (0,) * g24.num_edges)
            with pytest.raises(InvalidFlow):
                reverse_flow(g24, o, bogus)
            return
    pytest.fail("no invalid pair found")


def test_adjacency(triv, g24):
    ms = enumerate_matchings(triv)
    assert matching_adjacent(triv, ms[0], ms[1])
    assert not matching_adjacent(triv, ms[0], ms[0])
    ms = enumerate_matchings(g24)
    pairs = [(a, b) for a, b in combinations(ms, 2) if matching_adjacent(g24, a, b)]
    assert len(pairs) == 17
    for a, b in combinations(ms, 2):
        assert matching_adjacent(g24, a, b) == matching_adjacent(g24, b, a)


def test_no_matchings_is_empty():
    from plabic.graph import parse_graph

    # a white vertex with two black neighbours, each black vertex a leaf
    g = parse_graph(
        """
        n 1
        vertex w white
        vertex u1 black
        vertex u2 black
        edge e1 b1 w
        edge e2 w u1
        edge e3 w u2
        rotation w e1 e2 e3
        rotation u1 e2
        rotation u2 e3
        """
    )
    assert enumerate_matchings(g) == []
    assert enumerate_orientations(g) == []
