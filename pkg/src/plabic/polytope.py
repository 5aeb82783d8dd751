"""The matching polytope P(G) and its face lattice.

Faces of P(G) are the elementary subgraphs of G: edge sets that are unions of
almost perfect matchings.  The lattice is generated by closing the set of
matchings under pairwise union.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import InvariantError
from .graph import DiskGraph, cycle_rank, face_traversal, faces, region_count
from .matchings import enumerate_matching_masks

logger = logging.getLogger(__name__)


def affine_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Exact affine rank of integer vectors (fraction-free elimination).

    Returns -1 for an empty list.
    """
    vectors = [list(map(int, v)) for v in vectors]
    if not vectors:
        return -1
    base = vectors[0]
    rows = [[a - b for a, b in zip(v, base)] for v in vectors[1:]]
    return _rank(rows)


def _rank(rows: list[list[int]]) -> int:
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    ncol = len(rows[0])
    r = 0
    prev = 1
    for c in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            rows[i] = [(p * x - a * y) // prev for x, y in zip(rows[i], rows[r])]
        prev = p
        r += 1
        if r == len(rows):
            break
    return r


def chi(g: DiskGraph, mask: int) -> tuple[int, ...]:
    return tuple(mask >> i & 1 for i in range(g.num_edges))


@dataclass(frozen=True)
class MatchingPolytope:
    edge_ids: tuple[str, ...]
    masks: tuple[int, ...]
    dim: int

    @property
    def vertices(self) -> list[tuple[int, ...]]:
        E = len(self.edge_ids)
        return [tuple(m >> i & 1 for i in range(E)) for m in self.masks]

    @property
    def num_vertices(self) -> int:
        return len(self.masks)


def build_polytope(g: DiskGraph) -> MatchingPolytope:
    masks = enumerate_matching_masks(g)
    dim = affine_rank([chi(g, m) for m in masks])
    return MatchingPolytope(g.edge_ids, tuple(masks), dim)


def dimension_crosscheck(g: DiskGraph) -> tuple[int, int, bool]:
    """``(affine rank of P(G), #faces - 1, every edge used by a matching)``."""
    p = build_polytope(g)
    used = 0
    for m in p.masks:
        used |= m
    return p.dim, faces(g).count - 1, used == g.full_mask


def _point(g: DiskGraph, x) -> list[Fraction]:
    if isinstance(x, Mapping):
        if set(x) != set(g.edge_ids):
            extra = sorted(set(x) - set(g.edge_ids))
            missing = sorted(set(g.edge_ids) - set(x))
            raise ValueError(f"coordinates must be indexed by the edges (extra {extra}, missing {missing})")
        return [Fraction(x[e]) for e in g.edge_ids]
    x = list(x)
    if len(x) != g.num_edges:
        raise ValueError(f"expected {g.num_edges} coordinates, got {len(x)}")
    return [Fraction(v) for v in x]


def membership(g: DiskGraph, x) -> bool:
    """Test ``x_e >= 0`` and the unit vertex sums."""
    pt = _point(g, x)
    if any(v < 0 for v in pt):
        return False
    idx = g.edge_index
    return all(sum(pt[idx[e]] for e in g.incident[v]) == 1 for v in g.internal)


def zero_one_solutions(g: DiskGraph, max_edges: int = 24) -> list[int]:
    """All 0-1 points satisfying the vertex equations, by exhaustive scan.

    Every vertex of the inequality-described polytope is 0-1, so this is its
    vertex set.  Exponential in the edge count; meant for small graphs.
    """
    E = g.num_edges
    if E > max_edges:
        raise ValueError(f"{E} edges is too many for an exhaustive scan")
    inc = np.zeros((len(g.internal), E), dtype=np.int64)
    for r, v in enumerate(g.internal):
        for e in g.incident[v]:
            inc[r, g.edge_index[e]] += 1
    found = []
    chunk = 1 << 16
    bits = np.arange(E, dtype=np.int64)
    for start in range(0, 1 << E, chunk):
        ms = np.arange(start, min(start + chunk, 1 << E), dtype=np.int64)
        X = (ms[:, None] >> bits) & 1
        ok = np.all(X @ inc.T == 1, axis=1)
        found.extend(int(m) for m in ms[ok])
    return sorted(found, key=lambda m: [i for i in range(E) if m >> i & 1])


def is_vertex_of_h_polytope(g: DiskGraph, mask: int) -> bool:
    """Whether the 0-1 point is a vertex: its tight constraints have full rank."""
    E = g.num_edges
    rows = []
    for v in g.internal:
        rows.append([1 if e in g.incident[v] else 0 for e in g.edge_ids])
    for i in range(E):
        if not mask >> i & 1:
            rows.append([1 if j == i else 0 for j in range(E)])
    return _rank(rows) == E


# ---------------------------------------------------------------------------
# face lattice


@dataclass(frozen=True)
class ElementarySubgraph:
    mask: int
    edges: tuple[str, ...]
    matchings: tuple[int, ...]  # indices into FaceLattice.matchings
    dim: int


@dataclass(frozen=True)
class FaceLattice:
    edge_ids: tuple[str, ...]
    matchings: tuple[int, ...]
    faces: tuple[ElementarySubgraph, ...]
    dim: int
    _index: dict = field(default=None, repr=False, compare=False)

    @property
    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * max(self.dim, 0)
        for f in self.faces:
            if 0 <= f.dim < self.dim:
                counts[f.dim] += 1
        return tuple(counts)

    def by_dim(self, d: int) -> list[ElementarySubgraph]:
        return [f for f in self.faces if f.dim == d]

    @property
    def top(self) -> ElementarySubgraph:
        return self.faces[-1]

    def face(self, mask: int) -> ElementarySubgraph:
        return self._index[mask]

    def __contains__(self, mask: int) -> bool:
        return mask in self._index

    def covered(self, f: ElementarySubgraph) -> list[ElementarySubgraph]:
        """Faces one dimension lower contained in ``f``."""
        return [h for h in self.by_dim(f.dim - 1) if h.mask & ~f.mask == 0]

    def covers(self) -> dict[int, list[int]]:
        """Cover relation as face mask -> masks of maximal proper subfaces."""
        layers: dict[int, list[int]] = {}
        for f in self.faces:
            layers.setdefault(f.dim, []).append(f.mask)
        out = {}
        for f in self.faces:
            below = layers.get(f.dim - 1, [])
            out[f.mask] = [h for h in below if h & ~f.mask == 0]
        return out

    @property
    def facets(self) -> list[ElementarySubgraph]:
        return self.by_dim(self.dim - 1)

    def euler_sum(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.f_vector))

    def euler_ok(self) -> bool:
        """Alternating f-vector sum equals ``1 - (-1)^d``."""
        if self.dim < 1:
            return True
        return self.euler_sum() == 1 + (-1) ** (self.dim - 1)


def _mask_key(mask: int):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def union_closure(generators: Sequence[int]) -> set[int]:
    """All unions of nonempty subsets of ``generators``."""
    seen = set(generators)
    frontier = list(seen)
    while frontier:
        nxt = []
        for f in frontier:
            for m in generators:
                u = f | m
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen


def face_lattice(g: DiskGraph) -> FaceLattice:
    """Enumerate every face of P(G) with its dimension.

    Dimensions are affine ranks of the contained matchings.  They are computed
    modulo a large prime (a lower bound on the rational rank) and certified
    against the dimension of the affine space cut out by the vertex equations
    on the face's edges (an upper bound); any face where the bounds differ is
    recomputed exactly.
    """
    masks = enumerate_matching_masks(g)
    unions = sorted(union_closure(masks), key=_mask_key)
    E = g.num_edges
    vecs = np.array([chi(g, m) for m in masks], dtype=np.int64).reshape(len(masks), E)
    member = np.array([[m & ~h == 0 for m in masks] for h in unions], dtype=np.bool_)
    member = member.reshape(len(unions), len(masks))
    ranks = kernels.affine_ranks_modp(vecs, member) if unions else np.zeros(0, dtype=np.int64)
    faces_out = [ElementarySubgraph(0, (), (), -1)]
    for h, row, r in zip(unions, member, ranks):
        inside = tuple(int(i) for i in np.flatnonzero(row))
        upper = cycle_rank(g, h)
        r = int(r)
        if r != upper:
            exact = affine_rank([vecs[i] for i in inside])
            logger.debug("modular rank %d below bound %d; exact rank %d", r, upper, exact)
            r = exact
        faces_out.append(ElementarySubgraph(h, g.edges_of(h), inside, r))
    faces_out.sort(key=lambda f: (f.dim, _mask_key(f.mask)))
    d = faces_out[-1].dim
    index = {f.mask: f for f in faces_out}
    return FaceLattice(g.edge_ids, tuple(masks), tuple(faces_out), d, index)


def gamma(g: DiskGraph, matching_masks) -> int:
    """Edges on which some vertex of the face is nonzero."""
    out = 0
    for m in matching_masks:
        out |= m
    return out


def phi(masks, subgraph_mask: int) -> list[int]:
    """Vertices of the face cut out by ``x_e = 0`` for edges outside the subgraph."""
    return [m for m in masks if m & ~subgraph_mask == 0]


# ---------------------------------------------------------------------------
# facets and edge equivalence


@dataclass(frozen=True)
class Facet:
    edge_class: tuple[str, ...]
    subgraph: tuple[str, ...]
    mask: int


def _support(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def functional_classes(g: DiskGraph) -> list[tuple[str, ...]]:
    """Group used edges by the set of matchings containing them."""
    masks = enumerate_matching_masks(g)
    groups: dict[int, list[str]] = {}
    for i, e in enumerate(g.edge_ids):
        key = 0
        for j, m in enumerate(masks):
            if m >> i & 1:
                key |= 1 << j
        if key:
            groups.setdefault(key, []).append(e)
    return sorted((tuple(v) for v in groups.values()), key=lambda c: g.edge_index[c[0]])


def _geometric_keys(g: DiskGraph, mask: int) -> dict[str, object]:
    dart_face = {}
    for i, f in enumerate(face_traversal(g, mask)):
        for d in f.darts:
            dart_face[d] = i
    keys = {}
    for e in g.edges_of(mask):
        right = dart_face[(e, g.black_end(e))]
        left = dart_face[(e, g.white_end(e))]
        # an edge with one face on both sides gives the zero functional
        keys[e] = "bridge" if right == left else (right, left)
    return keys


def geometric_classes(g: DiskGraph) -> list[tuple[str, ...]]:
    """Group used edges by the ordered pair of faces they separate.

    Orienting each edge from its black end to its white end, the key is
    (face on the right, face on the left).
    """
    support = _support(enumerate_matching_masks(g))
    groups: dict[object, list[str]] = {}
    for e, k in _geometric_keys(g, support).items():
        groups.setdefault(k, []).append(e)
    return sorted((tuple(v) for v in groups.values()), key=lambda c: g.edge_index[c[0]])


def geometric_edge_equivalence(g: DiskGraph, e1: str, e2: str) -> bool:
    support = _support(enumerate_matching_masks(g))
    keys = _geometric_keys(g, support)
    if e1 not in keys or e2 not in keys:
        raise ValueError("edges must be used by some matching")
    return keys[e1] == keys[e2]


def facets(g: DiskGraph) -> list[Facet]:
    """Facets of P(G) as deletions of one edge equivalence class.

    If some edges lie in no matching, work inside the union of all matchings.
    """
    masks = enumerate_matching_masks(g)
    support = _support(masks)
    out = []
    for cls in functional_classes(g):
        h = support & ~g.mask_of(cls)
        inside = phi(masks, h)
        if inside and gamma(g, inside) == h:
            out.append(Facet(cls, g.edges_of(h), h))
    return out


def is_edge_face(g: DiskGraph, face: ElementarySubgraph) -> bool:
    """Whether the face is an edge of P(G), cross-checked by region count."""
    by_dim = face.dim == 1
    by_regions = face.mask != 0 and region_count(g, face.mask) == 2
    if by_dim != by_regions:
        raise InvariantError(
            f"face {face.edges}: dimension {face.dim} but region count says edge={by_regions}"
        )
    return by_dim
