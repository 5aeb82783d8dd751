"""Boundary measurements: flow polynomials for Plücker coordinates.

For a perfect orientation with source set ``I``, the Plücker coordinate
``p_J`` is the sum of the weights of all flows from ``I`` to ``J``.  A
flow's weight is the Laurent monomial with exponent +1 on edges it traverses
from white to black and -1 on edges traversed from black to white.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .graph import DiskGraph, graph_type
from .laurent import LaurentPoly
from .matchings import Orientation, enumerate_flows, orientation_to_matching


def _key(J) -> tuple[int, ...]:
    return tuple(sorted(J))


def plucker_polynomials(g: DiskGraph, o: Orientation) -> dict[tuple[int, ...], LaurentPoly]:
    """Map each destination set ``J`` (sorted tuple) to its flow polynomial.

    Sets with no flow are omitted.  Coefficients add if two flows share an
    exponent vector; :func:`exponent_collisions` reports when that happens.
    """
    out: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    for f in enumerate_flows(g, o):
        terms = out.setdefault(_key(f.destination_set), {})
        terms[f.exponent] = terms.get(f.exponent, 0) + 1
    return {J: LaurentPoly(g.edge_ids, t) for J, t in sorted(out.items())}


def exponent_collisions(g: DiskGraph, o: Orientation) -> list[tuple[int, ...]]:
    """Exponent vectors shared by more than one flow (expected empty)."""
    seen: dict[tuple[int, ...], int] = {}
    for f in enumerate_flows(g, o):
        seen[f.exponent] = seen.get(f.exponent, 0) + 1
    return sorted(e for e, c in seen.items() if c > 1)


@dataclass(frozen=True)
class PluckerVector:
    """Plücker coordinates over all k-subsets, defined up to a positive scalar."""

    k: int
    n: int
    values: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __getitem__(self, J) -> Fraction:
        return dict(self.values)[_key(J)]

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.values)

    def support(self) -> set[tuple[int, ...]]:
        return {J for J, v in self.values if v != 0}

    def normalized(self, J=None) -> dict[tuple[int, ...], Fraction]:
        """Divide through by the entry at ``J`` (default: first nonzero)."""
        vals = self.as_dict()
        if J is None:
            J = min(self.support())
        ref = vals[_key(J)]
        return {K: v / ref for K, v in vals.items()}

    def to_records(self) -> list[tuple[list[int], str]]:
        return [(list(J), f"{v.numerator}/{v.denominator}") for J, v in self.values]


def _weights(g: DiskGraph, weights: Mapping[str, Fraction | int | str]) -> dict[str, Fraction]:
    missing = set(g.edge_ids) - set(weights)
    if missing:
        raise ValueError(f"missing weights for edges {sorted(missing)}")
    out = {}
    for e in g.edge_ids:
        w = Fraction(weights[e])
        if w <= 0:
            raise ValueError(f"weights must be positive (edge {e} has {w})")
        out[e] = w
    return out


def evaluate_plucker(g: DiskGraph, o: Orientation, weights) -> PluckerVector:
    """Exact values of every ``p_J`` at positive rational edge weights."""
    w = _weights(g, weights)
    k, n = graph_type(g)
    polys = plucker_polynomials(g, o)
    vals = []
    for J in combinations(range(1, n + 1), k):
        p = polys.get(J)
        vals.append((J, p.evaluate(w) if p is not None else Fraction(0)))
    return PluckerVector(k, n, tuple(vals))


def projectively_equal(p: PluckerVector, q: PluckerVector) -> bool:
    if p.support() != q.support():
        return False
    if not p.support():
        return True
    J = min(p.support())
    return p.normalized(J) == q.normalized(J)


def orientation_invariance_check(g: DiskGraph, o1: Orientation, o2: Orientation, weights) -> bool:
    return projectively_equal(evaluate_plucker(g, o1, weights), evaluate_plucker(g, o2, weights))


def newton_polytope(g: DiskGraph, o: Orientation) -> set[tuple[int, ...]]:
    """Exponent vectors of all flows in ``o`` (the vertex set of P(G, O))."""
    return {f.exponent for f in enumerate_flows(g, o)}


def translated_matchings(g: DiskGraph, o: Orientation, masks) -> set[tuple[int, ...]]:
    """``{chi_M - chi_{M_O}}`` for the given matching masks."""
    base = orientation_to_matching(g, o).mask
    E = g.num_edges
    return {
        tuple((m >> i & 1) - (base >> i & 1) for i in range(E))
        for m in masks
    }
