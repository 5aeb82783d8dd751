from math import comb

import pytest

from plabic.fixtures import REPORT_SET, STATIC, available, builtin, canonical_name, g2n, validate_fixture
from plabic.matchings import enumerate_matching_masks
from plabic.polytope import build_polytope, face_lattice
from plabic.positroid import positroid_bases


def test_names():
    assert canonical_name("g25") == "g2n(5)"
    assert canonical_name("G2N-6") == "g2n(6)"
    assert canonical_name("g26") == "g2n(6)"
    assert "g2n(n)" in available()
    with pytest.raises(KeyError):
        builtin("g99x")


@pytest.mark.parametrize("name", list(STATIC) + ["g2n(5)"])
def test_fixture_reports_pass(name):
    rep = validate_fixture(name)
    assert rep.checks
    assert rep.passed, "\n".join(rep.lines())


def test_g24_expectations():
    fx = builtin("g24")
    assert len(enumerate_matching_masks(fx.graph)) == 7
    assert fx.expected["f_vector"]["value"] == [7, 17, 18, 8]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_g2n_is_top_cell(n):
    g = g2n(n)
    assert build_polytope(g).dim == 2 * (n - 2)
    assert len(positroid_bases(g)) == comb(n, 2)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_g2n_vertex_formula(n):
    assert len(enumerate_matching_masks(g2n(n))) == comb(n, 3) + n - 1


def test_report_set_contents():
    assert set(REPORT_SET) == {"g24", "g2n(5)", "g2n(6)", "g36", "g26-alt"}


def test_failures_become_entries():
    from plabic.fixtures import Check, FixtureReport

    rep = FixtureReport("x", (Check("f_vector", (1, 2), (1, 3)),))
    assert not rep.passed
    assert rep.lines() == ["FAIL x f_vector: expected (1,2), got (1,3)"]


def test_g2n6_f_vector():
    assert face_lattice(g2n(6)).f_vector == (25, 158, 440, 664, 590, 315, 98, 16)
