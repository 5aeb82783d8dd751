from plabic.fixtures import builtin
from plabic.matchings import enumerate_orientations, orientation_to_matching
from plabic.measurement import plucker_polynomials
from plabic.positroid import (
    bases_from_matchings,
    bases_from_orientations,
    fiber_newton_polytope,
    fiber_translate,
    matroid_polytope,
    positroid_bases,
    project_psi,
    satisfies_exchange,
)


def G(name):
    return builtin(name).graph


def test_bases():
    assert positroid_bases(G("triv-path")).bases == ((1,), (2,))
    assert len(positroid_bases(G("g24"))) == 6
    assert positroid_bases(G("fig1-p2")).bases == ((1, 2), (1, 3), (1, 4))
    assert positroid_bases(G("fig2-p1p1")).bases == ((1, 2), (1, 3), (2, 4), (3, 4))


def test_two_routes_agree():
    for name in ("g24", "g25", "g36", "g26-alt", "fig1-p2", "fig2-p1p1", "sect2-example"):
        g = G(name)
        assert bases_from_matchings(g) == bases_from_orientations(g)


def test_exchange():
    for name in ("g24", "g36", "fig1-p2", "fig2-p1p1"):
        assert satisfies_exchange(positroid_bases(G(name)).bases)
    assert not satisfies_exchange([(1, 2), (3, 4)])


def test_same_positroid_different_polytope():
    from plabic.polytope import face_lattice

    a, b = G("g26"), G("g26-alt")
    assert positroid_bases(a) == positroid_bases(b)
    assert face_lattice(a).f_vector != face_lattice(b).f_vector


def test_matroid_polytopes():
    seg = matroid_polytope(positroid_bases(G("triv-path")))
    assert set(seg.vertices) == {(1, 0), (0, 1)}
    octa = matroid_polytope(positroid_bases(G("g24")))
    assert len(octa.vertices) == 6
    assert octa.hyperplane_ok()
    # each vertex has exactly one antipode
    assert len(octa.antipodal_pairs()) == 3
    sq = matroid_polytope(positroid_bases(G("fig2-p1p1")))
    assert set(sq.vertices) == {(1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1)}


def test_projection_g24():
    fibers = project_psi(G("g24"))
    assert len(fibers) == 6
    assert sum(len(v) for v in fibers.values()) == 7
    doubles = [J for J, ms in fibers.items() if len(ms) == 2]
    assert doubles == [(2, 4)]


def test_projection_triv_bijective():
    assert all(len(v) == 1 for v in project_psi(G("triv-path")).values())


def test_projection_with_white_legs_only():
    g = G("fig2-p1p1")
    fibers = project_psi(g)
    assert sum(len(v) for v in fibers.values()) == 4


def test_fibers_are_newton_polytopes():
    g = G("g24")
    for o in enumerate_orientations(g):
        for J in project_psi(g):
            assert fiber_newton_polytope(g, o, J) == fiber_translate(g, o, J)
        I = tuple(sorted(o.sources))
        # no conservative flows in an acyclic orientation
        if len(plucker_polynomials(g, o)[I]) == 1:
            assert fiber_newton_polytope(g, o, I) == {(0,) * g.num_edges}
    o = enumerate_orientations(g)[0]
    assert len(fiber_newton_polytope(g, o, (2, 4))) == 2
    assert fiber_newton_polytope(g, o, (1, 5)) == set()


def test_triv_fiber():
    g = G("triv-path")
    o = [o for o in enumerate_orientations(g) if o.sources == {1}][0]
    assert len(fiber_newton_polytope(g, o, (2,))) == 1
    assert orientation_to_matching(g, o).sources == {1}
