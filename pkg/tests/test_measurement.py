import random
from fractions import Fraction

import pytest

from plabic.fixtures import builtin
from plabic.laurent import LaurentPoly
from plabic.matchings import enumerate_matching_masks, enumerate_orientations
from plabic.measurement import (
    evaluate_plucker,
    exponent_collisions,
    newton_polytope,
    orientation_invariance_check,
    plucker_polynomials,
    projectively_equal,
    translated_matchings,
)


def ones(g):
    return {e: 1 for e in g.edge_ids}


def conservative_flow_count(g, o):
    """Brute force: edge sets with in = out <= 1 at every vertex, no legs."""
    tail = o.tail
    internal_edges = [e for e in g.edge_ids if all(x in g.color for x in g.endpoints[e])]
    count = 0
    for bits in range(1 << len(internal_edges)):
        chosen = [e for i, e in enumerate(internal_edges) if bits >> i & 1]
        outs = {v: 0 for v in g.internal}
        ins = {v: 0 for v in g.internal}
        for e in chosen:
            t = tail[e]
            outs[t] += 1
            ins[g.other_end(e, t)] += 1
        if all(outs[v] == ins[v] <= 1 for v in g.internal):
            count += 1
    return count


def test_triv_all_ones():
    g = builtin("triv-path").graph
    o = enumerate_orientations(g)[0]
    pv = evaluate_plucker(g, o, ones(g))
    assert pv.as_dict() == {(1,): 1, (2,): 1}


def test_acyclic_source_coordinate_is_one():
    g = builtin("triv-path").graph
    for o in enumerate_orientations(g):
        p = plucker_polynomials(g, o)[tuple(sorted(o.sources))]
        assert p == LaurentPoly.one(g.edge_ids)


def test_g24_six_nonzero():
    g = builtin("g24").graph
    for o in enumerate_orientations(g):
        polys = plucker_polynomials(g, o)
        assert len(polys) == 6
        pv = evaluate_plucker(g, o, ones(g))
        assert all(v > 0 for v in pv.as_dict().values())
        assert not exponent_collisions(g, o)


def test_g24_source_entry_counts_conservative_flows():
    g = builtin("g24").graph
    for o in enumerate_orientations(g):
        pv = evaluate_plucker(g, o, ones(g))
        assert pv[o.sources] == conservative_flow_count(g, o)


def test_g24_all_pairs_projectively_equal():
    g = builtin("g24").graph
    os_ = enumerate_orientations(g)
    for a in os_:
        for b in os_:
            assert orientation_invariance_check(g, a, b, ones(g))


def test_triv_random_weights():
    g = builtin("triv-path").graph
    o1, o2 = enumerate_orientations(g)
    rng = random.Random(1)
    for _ in range(20):
        w = {e: Fraction(rng.randint(1, 20), rng.randint(1, 20)) for e in g.edge_ids}
        assert orientation_invariance_check(g, o1, o2, w)


def test_gauge_invariance():
    g = builtin("g36").graph
    o = enumerate_orientations(g)[0]
    rng = random.Random(7)
    w = {e: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for e in g.edge_ids}
    ref = evaluate_plucker(g, o, w)
    for v in g.internal:
        scaled = dict(w)
        for e in g.incident[v]:
            scaled[e] *= Fraction(5, 3)
        assert projectively_equal(ref, evaluate_plucker(g, o, scaled))


def test_nonpositive_weight_rejected():
    g = builtin("triv-path").graph
    o = enumerate_orientations(g)[0]
    with pytest.raises(ValueError, match="weights must be positive"):
        evaluate_plucker(g, o, {"e1": 1, "e2": 0, "e3": 1})


def test_translation_identity_g24():
    g = builtin("g24").graph
    masks = enumerate_matching_masks(g)
    for o in enumerate_orientations(g):
        S = newton_polytope(g, o)
        assert (0,) * g.num_edges in S
        assert S == translated_matchings(g, o, masks)


def test_triv_newton():
    g = builtin("triv-path").graph
    o = [o for o in enumerate_orientations(g) if o.sources == {1}][0]
    # chi_{e2} - chi_{e1,e3}
    assert newton_polytope(g, o) == {(0, 0, 0), (-1, 1, -1)}


def test_two_vertex_example_ratio():
    """p_2 / p_1 = abd / (1 + bc) after inverting the weight of b."""
    g = builtin("sect2-example").graph
    o = [o for o in enumerate_orientations(g) if o.tail == {"a": "b1", "b": "u", "c": "v", "d": "v"}][0]
    assert o.sources == {1}
    polys = plucker_polynomials(g, o)
    p1 = polys[(1,)].invert_variable("b")
    p2 = polys[(2,)].invert_variable("b")
    V = g.edge_ids
    var = lambda x: LaurentPoly.var(V, x)  # noqa: E731
    num = var("a") * var("b") * var("d")
    den = LaurentPoly.one(V) + var("b") * var("c")
    assert p2 * den == num * p1
