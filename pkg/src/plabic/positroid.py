"""The positroid of a graph, its matroid polytope, and the projection Psi."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import WHITE, DiskGraph, graph_type
from .matchings import Matching, Orientation, enumerate_matchings, enumerate_orientations
from .measurement import plucker_polynomials, translated_matchings


@dataclass(frozen=True)
class Positroid:
    k: int
    n: int
    bases: tuple[tuple[int, ...], ...]

    def __contains__(self, J) -> bool:
        return tuple(sorted(J)) in set(self.bases)

    def __len__(self) -> int:
        return len(self.bases)

    def to_record(self) -> list[list[int]]:
        return [list(b) for b in self.bases]


def bases_from_orientations(g: DiskGraph) -> set[tuple[int, ...]]:
    return {tuple(sorted(o.sources)) for o in enumerate_orientations(g)}


def bases_from_matchings(g: DiskGraph) -> set[tuple[int, ...]]:
    return {tuple(sorted(m.sources)) for m in enumerate_matchings(g)}


def positroid_bases(g: DiskGraph) -> Positroid:
    """Bases are the source sets of perfect orientations.

    Computed independently from orientations and from matchings; the two
    must agree.
    """
    via_o = bases_from_orientations(g)
    via_m = bases_from_matchings(g)
    if via_o != via_m:
        raise AssertionError(f"orientation and matching routes disagree: {sorted(via_o ^ via_m)}")
    k, n = graph_type(g)
    return Positroid(k, n, tuple(sorted(via_o)))


def satisfies_exchange(bases) -> bool:
    """Basis exchange: for A, B and a in A-B there is b in B-A with A-a+b a basis."""
    bs = {frozenset(b) for b in bases}
    if not bs:
        return False
    for A in bs:
        for B in bs:
            for a in A - B:
                if not any((A - {a}) | {b} in bs for b in B - A):
                    return False
    return True


def indicator(J, n: int) -> tuple[int, ...]:
    """``e(J)``: the 0-1 vector with ones at the positions in ``J``."""
    J = set(J)
    return tuple(1 if i in J else 0 for i in range(1, n + 1))


@dataclass(frozen=True)
class MatroidPolytopeData:
    k: int
    n: int
    vertices: tuple[tuple[int, ...], ...]

    def hyperplane_ok(self) -> bool:
        """All vertices lie on ``x_1 + ... + x_n = k``."""
        return all(sum(v) == self.k for v in self.vertices)

    def antipodal_pairs(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Vertex pairs with disjoint supports."""
        out = []
        for u, v in combinations(self.vertices, 2):
            if not any(a and b for a, b in zip(u, v)):
                out.append((u, v))
        return out


def matroid_polytope(p: Positroid) -> MatroidPolytopeData:
    if not p.bases:
        raise ValueError("matroid polytope of an empty basis set")
    return MatroidPolytopeData(p.k, p.n, tuple(indicator(J, p.n) for J in p.bases))


def psi_matrix(g: DiskGraph) -> tuple[list[list[int]], list[int]]:
    """The affine map ``x -> A x + c`` from edge space to boundary space.

    Coordinate i reads the leg at ``b_i``: ``x_e`` when its neighbour is
    white, ``1 - x_e`` when black.  With all boundary neighbours white this
    is a coordinate projection.
    """
    A = [[0] * g.num_edges for _ in range(g.n)]
    c = [0] * g.n
    for i in range(1, g.n + 1):
        e = g.boundary_edge.get(i)
        if e is None:
            continue
        j = g.edge_index[e]
        if g.color[g.boundary_neighbor[i]] == WHITE:
            A[i - 1][j] = 1
        else:
            A[i - 1][j] = -1
            c[i - 1] = 1
    return A, c


def psi(g: DiskGraph, x) -> tuple:
    A, c = psi_matrix(g)
    return tuple(sum(a * v for a, v in zip(row, x)) + ci for row, ci in zip(A, c))


def project_psi(g: DiskGraph) -> dict[tuple[int, ...], list[Matching]]:
    """Group matchings by their image basis ``e(source set)``.

    Keys are sorted bases; the map is checked against the affine formula.
    """
    fibers: dict[tuple[int, ...], list[Matching]] = {}
    for m in enumerate_matchings(g):
        J = tuple(sorted(m.sources))
        x = tuple(m.mask >> i & 1 for i in range(g.num_edges))
        if psi(g, x) != indicator(J, g.n):
            raise AssertionError(f"Psi of {m.edges} is not e({J})")
        fibers.setdefault(J, []).append(m)
    return dict(sorted(fibers.items()))


def fiber_newton_polytope(g: DiskGraph, o: Orientation, J) -> set[tuple[int, ...]]:
    """Exponent vectors of ``p_J`` (empty when ``J`` is not a basis)."""
    J = tuple(sorted(J))
    p = plucker_polynomials(g, o).get(J)
    return p.support() if p is not None else set()


def fiber_translate(g: DiskGraph, o: Orientation, J) -> set[tuple[int, ...]]:
    """``{chi_M - chi_{M_O} : M with source set J}``."""
    J = tuple(sorted(J))
    fiber = project_psi(g).get(J, [])
    return translated_matchings(g, o, [m.mask for m in fiber])

