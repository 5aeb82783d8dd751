"""Plane-bipartite graphs embedded in a disk.

A graph is stored combinatorially: boundary vertices ``b1..bn`` sit on the
rim in clockwise order, internal vertices carry a color, and every internal
vertex lists its incident edges in clockwise order (the rotation system).

Faces are found on the *boundary-contracted* graph: the rim is collapsed to
a single vertex ``*`` so the disk becomes a sphere and ordinary face
traversal applies.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

logger = logging.getLogger(__name__)

BLACK = "black"
WHITE = "white"
STAR = "*"

_BOUNDARY_RE = re.compile(r"^b([1-9][0-9]*)$")


class GraphError(ValueError):
    """Raised for malformed or invalid graph input."""


def natural_key(label: str):
    """Sort key that orders ``e2`` before ``e10``."""
    return tuple(int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", label))


def boundary_index(vertex: str) -> int | None:
    m = _BOUNDARY_RE.match(vertex)
    return int(m.group(1)) if m else None


class GraphType(NamedTuple):
    k: int
    n: int

    def __str__(self) -> str:
        return f"({self.k},{self.n})"


@dataclass(frozen=True)
class Face:
    """A face of the boundary-contracted embedding as a cyclic list of darts.

    A dart is ``(edge_id, tail)``; the face lies to the right of each dart.
    """

    darts: tuple[tuple[str, str], ...]

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[Face, ...]

    @property
    def count(self) -> int:
        return len(self.faces)

    F = count

    def dart_face(self) -> dict[tuple[str, str], int]:
        return {d: i for i, f in enumerate(self.faces) for d in f.darts}


@dataclass(frozen=True)
class DiskGraph:
    """A validated plane-bipartite graph.

    Use :func:`make_graph` or :func:`parse_graph` rather than the constructor
    directly; they strip boundary-free components and put everything in
    canonical order before validation runs here.
    """

    n: int
    vertices: tuple[tuple[str, str], ...]
    edges: tuple[tuple[str, str, str], ...]
    rotations: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self):
        _validate(self)

    # -- lookups -----------------------------------------------------------

    @cached_property
    def color(self) -> dict[str, str]:
        return dict(self.vertices)

    @cached_property
    def internal(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.vertices)

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e for e, _, _ in self.edges)

    @cached_property
    def edge_index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.edge_ids)}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.internal)}

    @cached_property
    def endpoints(self) -> dict[str, tuple[str, str]]:
        return {e: (a, b) for e, a, b in self.edges}

    @cached_property
    def rotation(self) -> dict[str, tuple[str, ...]]:
        return dict(self.rotations)

    @cached_property
    def incident(self) -> dict[str, tuple[str, ...]]:
        """Edges at each internal vertex, canonical order (not rotation order)."""
        out: dict[str, list[str]] = {v: [] for v in self.internal}
        for e, a, b in self.edges:
            for x in (a, b):
                if x in out:
                    out[x].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def boundary_edge(self) -> dict[int, str]:
        """Map boundary index i to the unique edge at ``b{i}``."""
        out = {}
        for e, a, b in self.edges:
            for x in (a, b):
                i = boundary_index(x)
                if i is not None:
                    out[i] = e
        return out

    @cached_property
    def boundary_neighbor(self) -> dict[int, str]:
        out = {}
        for i, e in self.boundary_edge.items():
            a, b = self.endpoints[e]
            out[i] = b if boundary_index(a) == i else a
        return out

    def is_boundary(self, vertex: str) -> bool:
        return boundary_index(vertex) is not None

    def other_end(self, edge: str, vertex: str) -> str:
        a, b = self.endpoints[edge]
        return b if a == vertex else a

    def effective_color(self, vertex: str, edge: str) -> str:
        """Color of ``vertex`` as seen along ``edge``.

        Boundary vertices are uncolored; along their unique edge they behave as
        the color opposite to their neighbour.  This makes "directed away from
        black or towards white" a single rule for every edge.
        """
        if vertex in self.color:
            return self.color[vertex]
        return WHITE if self.color[self.other_end(edge, vertex)] == BLACK else BLACK

    def black_end(self, edge: str) -> str:
        a, b = self.endpoints[edge]
        return a if self.effective_color(a, edge) == BLACK else b

    def white_end(self, edge: str) -> str:
        return self.other_end(edge, self.black_end(edge))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    def mask_of(self, edge_ids: Iterable[str]) -> int:
        idx = self.edge_index
        m = 0
        for e in edge_ids:
            m |= 1 << idx[e]
        return m

    def edges_of(self, mask: int) -> tuple[str, ...]:
        return tuple(e for i, e in enumerate(self.edge_ids) if mask >> i & 1)

    def relabel_edges(self, mapping: Mapping[str, str]) -> "DiskGraph":
        """Rename edges; used to check that results do not depend on labels."""
        return make_graph(
            self.n,
            self.vertices,
            [(mapping[e], a, b) for e, a, b in self.edges],
            {v: [mapping[e] for e in rot] for v, rot in self.rotations},
        )

    def __str__(self) -> str:
        return format_graph(self)


# ---------------------------------------------------------------------------
# construction & validation


def make_graph(
    n: int,
    vertices: Iterable[tuple[str, str]] | Mapping[str, str],
    edges: Iterable[tuple[str, str, str]],
    rotations: Mapping[str, Sequence[str]],
) -> DiskGraph:
    """Build a :class:`DiskGraph`, stripping components that miss the boundary."""
    if isinstance(vertices, Mapping):
        vertices = list(vertices.items())
    vertices = [(str(v), str(c).lower()) for v, c in vertices]
    edges = [(str(e), str(a), str(b)) for e, a, b in edges]

    seen: set[str] = set()
    for v, _ in vertices:
        if v in seen:
            raise GraphError(f"duplicate vertex id {v!r}")
        if boundary_index(v) is not None or v == STAR:
            raise GraphError(f"internal vertex id {v!r} clashes with a reserved boundary name")
        seen.add(v)
    seen = set()
    for e, _, _ in edges:
        if e in seen:
            raise GraphError(f"duplicate edge id {e!r}")
        seen.add(e)

    keep_v, keep_e = _boundary_reachable(vertices, edges)
    dropped = [v for v, _ in vertices if v not in keep_v]
    if dropped:
        logger.warning("removing %d internal vertices not connected to the boundary: %s",
                       len(dropped), ", ".join(sorted(dropped, key=natural_key)))
    vertices = sorted(((v, c) for v, c in vertices if v in keep_v), key=lambda p: natural_key(p[0]))
    edges = sorted((t for t in edges if t[0] in keep_e), key=lambda t: natural_key(t[0]))
    rots = tuple(
        (v, tuple(str(e) for e in rotations.get(v, ()))) for v, _ in vertices
    )
    return DiskGraph(n=int(n), vertices=tuple(vertices), edges=tuple(edges), rotations=rots)


def _boundary_reachable(vertices, edges):
    adj: dict[str, list[tuple[str, str]]] = {}
    for e, a, b in edges:
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    internal = {v for v, _ in vertices}
    stack = [x for x in adj if boundary_index(x) is not None]
    reach = set(stack)
    while stack:
        x = stack.pop()
        for _, y in adj.get(x, ()):
            if y not in reach:
                reach.add(y)
                stack.append(y)
    keep_v = {v for v in internal if v in reach}
    # edges touching unknown vertices are kept so validation reports them
    keep_e = {e for e, a, b in edges if a in reach or b in reach or
              (a not in internal and boundary_index(a) is None) or
              (b not in internal and boundary_index(b) is None)}
    return keep_v, keep_e


def _validate(g: DiskGraph) -> None:
    if g.n < 0:
        raise GraphError("boundary count n must be nonnegative")
    colors = dict(g.vertices)
    for v, c in g.vertices:
        if c not in (BLACK, WHITE):
            raise GraphError(f"vertex {v!r} has color {c!r}; expected black or white")
    bdeg = {i: 0 for i in range(1, g.n + 1)}
    for e, a, b in g.edges:
        for x in (a, b):
            i = boundary_index(x)
            if i is None and x not in colors:
                raise GraphError(f"edge {e!r} uses unknown vertex {x!r}")
            if i is not None:
                if i > g.n:
                    raise GraphError(f"edge {e!r} uses boundary vertex {x!r} but n = {g.n}")
                bdeg[i] += 1
        if a == b:
            raise GraphError(f"edge {e!r} is a loop at {a!r}")
        ba, bb = boundary_index(a), boundary_index(b)
        if ba is not None and bb is not None:
            raise GraphError(f"edge {e!r} joins two boundary vertices")
        if ba is None and bb is None and colors[a] == colors[b]:
            raise GraphError(f"same-color edge {e!r} joins {a!r} and {b!r} (both {colors[a]})")
    for i, d in bdeg.items():
        if d != 1:
            raise GraphError(f"boundary vertex b{i} has degree {d}; expected exactly 1")

    incident: dict[str, list[str]] = {v: [] for v in colors}
    for e, a, b in g.edges:
        for x in (a, b):
            if x in incident:
                incident[x].append(e)
    rot = dict(g.rotations)
    for v in colors:
        r = rot.get(v, ())
        if sorted(r) != sorted(incident[v]):
            raise GraphError(
                f"rotation at {v!r} lists {list(r)} but incident edges are {sorted(incident[v], key=natural_key)}"
            )
        if not r:
            raise GraphError(f"internal vertex {v!r} has no edges")

    # Euler check on the boundary-contracted graph
    if g.edges:
        nf = len(face_traversal(g))
        nv = len(colors) + 1
        ne = len(g.edges)
        if nv - ne + nf != 2:
            raise GraphError(
                f"rotation system is not planar in the disk: V - E + F = {nv} - {ne} + {nf} != 2"
            )


# ---------------------------------------------------------------------------
# faces


def star_rotation(g: DiskGraph, mask: int | None = None) -> tuple[str, ...]:
    """Clockwise rotation at the contracted boundary vertex.

    Going clockwise around the rim is counterclockwise around the point the
    rim collapses to, hence the reversal.
    """
    idx = g.edge_index
    out = []
    for i in range(g.n, 0, -1):
        e = g.boundary_edge[i]
        if mask is None or mask >> idx[e] & 1:
            out.append(e)
    return tuple(out)


def _contracted_rotations(g: DiskGraph, mask: int | None):
    idx = g.edge_index
    rot = {}
    for v, r in g.rotations:
        rr = tuple(e for e in r if mask is None or mask >> idx[e] & 1)
        if rr:
            rot[v] = rr
    s = star_rotation(g, mask)
    if s:
        rot[STAR] = s
    return rot


def _contracted_end(g: DiskGraph, vertex: str) -> str:
    return STAR if boundary_index(vertex) is not None else vertex


def face_traversal(g: DiskGraph, mask: int | None = None) -> list[Face]:
    """Trace faces of the boundary-contracted graph restricted to ``mask``.

    Arriving at a vertex along an edge, leave along the next edge
    counterclockwise; each face then lies to the right of its darts.
    Darts are reported with their original (uncontracted) tail vertex.
    """
    rot = _contracted_rotations(g, mask)
    pos = {v: {e: i for i, e in enumerate(r)} for v, r in rot.items()}
    idx = g.edge_index
    edges = [e for e in g.edge_ids if mask is None or mask >> idx[e] & 1]
    unused = set()
    for e in edges:
        a, b = g.endpoints[e]
        unused.add((e, a))
        unused.add((e, b))
    faces = []
    for start in sorted(unused, key=lambda d: (natural_key(d[0]), natural_key(d[1]))):
        if start not in unused:
            continue
        darts = []
        d = start
        while d in unused:
            unused.remove(d)
            darts.append(d)
            e, tail = d
            head = g.other_end(e, tail)
            h = _contracted_end(g, head)
            r = rot[h]
            # next counterclockwise = previous in the clockwise list
            # (a parallel pair at * cannot occur: boundary edges are distinct legs)
            nxt = r[(pos[h][e] - 1) % len(r)]
            if h == STAR:
                new_tail = next(x for x in g.endpoints[nxt] if boundary_index(x) is not None)
            else:
                new_tail = head
            d = (nxt, new_tail)
        faces.append(Face(tuple(darts)))
    return faces


def faces(g: DiskGraph) -> FaceSet:
    """Faces of the embedding, i.e. regions of the disk cut out by the graph."""
    return FaceSet(tuple(face_traversal(g)))


def region_count(g: DiskGraph, mask: int) -> int:
    """Number of regions into which the edges in ``mask`` divide the disk.

    Counted geometrically: faces are traced per connected component of the
    contracted subgraph and the outer regions of the components are merged.
    """
    fs = face_traversal(g, mask)
    comps = _components(g, mask)
    if not fs:
        return 1
    return len(fs) - comps + 1


def _components(g: DiskGraph, mask: int) -> int:
    """Connected components (with at least one edge) of the contracted subgraph."""
    parent: dict[str, str] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges_of(mask):
        a, b = (_contracted_end(g, x) for x in g.endpoints[e])
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(x) for x in parent})


def cycle_rank(g: DiskGraph, mask: int) -> int:
    """First Betti number of the contracted subgraph on the edges in ``mask``."""
    verts = set()
    for e in g.edges_of(mask):
        for x in g.endpoints[e]:
            verts.add(_contracted_end(g, x))
    return bin(mask).count("1") - len(verts) + _components(g, mask)


# ---------------------------------------------------------------------------
# type


def graph_type(g: DiskGraph) -> GraphType:
    total = 0
    for v, c in g.vertices:
        sign = 1 if c == BLACK else -1
        total += sign * (len(g.incident[v]) - 2)
    if (total + g.n) % 2:
        raise GraphError(f"inconsistent type: k - (n - k) = {total} has the wrong parity for n = {g.n}")
    k = (total + g.n) // 2
    if not 0 <= k <= g.n:
        raise GraphError(f"inconsistent type: k = {k} lies outside [0, {g.n}]")
    return GraphType(k, g.n)


# ---------------------------------------------------------------------------
# normalization & isomorphism


def normalize_boundary(g: DiskGraph) -> DiskGraph:
    """Make every boundary neighbour white.

    A boundary edge ``b_i - u`` with ``u`` black is subdivided by a new white
    vertex of degree two.  Matchings correspond bijectively (the new vertex
    takes ``u`` exactly when ``b_i - u`` was matched), so the polytope, the
    positroid and the face lattice are unchanged; afterwards the covered
    boundary set of a matching equals the source set of its orientation.
    """
    vertices = list(g.vertices)
    edges = list(g.edges)
    rot = {v: list(r) for v, r in g.rotations}
    taken = set(g.color) | set(g.edge_ids)

    def fresh(stem):
        j = 1
        while f"{stem}{j}" in taken:
            j += 1
        taken.add(f"{stem}{j}")
        return f"{stem}{j}"

    changed = False
    for i in range(1, g.n + 1):
        e = g.boundary_edge[i]
        u = g.boundary_neighbor[i]
        if g.color[u] != BLACK:
            continue
        changed = True
        w = fresh(f"nb{i}w")
        e2 = fresh(f"{e}x")
        vertices.append((w, WHITE))
        edges = [(eid, a, b) if eid != e else (e, f"b{i}", w) for eid, a, b in edges]
        edges.append((e2, w, u))
        rot[u] = [e2 if x == e else x for x in rot[u]]
        rot[w] = [e, e2]
    if not changed:
        return g
    return make_graph(g.n, vertices, edges, rot)


def embedded_isomorphic(g: DiskGraph, h: DiskGraph) -> bool:
    """Isomorphism of embedded graphs fixing boundary labels and colors."""
    if g.n != h.n or len(g.edges) != len(h.edges) or len(g.vertices) != len(h.vertices):
        return False
    vmap: dict[str, str] = {}
    emap: dict[str, str] = {}
    stack = []
    for i in range(1, g.n + 1):
        vmap[f"b{i}"] = f"b{i}"
        ge, he = g.boundary_edge[i], h.boundary_edge[i]
        emap[ge] = he
        stack.append((g.boundary_neighbor[i], h.boundary_neighbor[i], ge, he))
    while stack:
        gv, hv, ge, he = stack.pop()
        if gv in vmap:
            if vmap[gv] != hv:
                return False
            continue
        if g.color.get(gv) != h.color.get(hv):
            return False
        gr, hr = g.rotation[gv], h.rotation[hv]
        if len(gr) != len(hr):
            return False
        vmap[gv] = hv
        gi, hi = gr.index(ge), hr.index(he)
        for s in range(len(gr)):
            a, b = gr[(gi + s) % len(gr)], hr[(hi + s) % len(hr)]
            if emap.setdefault(a, b) != b:
                return False
            stack.append((g.other_end(a, gv), h.other_end(b, hv), a, b))
    if len(set(emap.values())) != len(emap) or len(emap) != len(g.edges):
        return False
    return all(
        {vmap[x] for x in g.endpoints[e]} == set(h.endpoints[emap[e]]) for e in emap
    )


# ---------------------------------------------------------------------------
# text format
#
#   n 4
#   vertex w1 white
#   edge e1 b1 w1
#   rotation w1 e1 e5 e8
#
# '#' starts a comment; tokens are separated by arbitrary whitespace.


def parse_graph(text: str) -> DiskGraph:
    n = None
    vertices: list[tuple[str, str]] = []
    edges: list[tuple[str, str, str]] = []
    rotations: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kw = tok[0].lower()
        if kw == "n":
            if len(tok) != 2 or not tok[1].isdigit():
                raise GraphError(f"line {lineno}: expected 'n <count>'")
            if n is not None:
                raise GraphError(f"line {lineno}: 'n' given twice")
            n = int(tok[1])
        elif kw == "vertex":
            if len(tok) != 3:
                raise GraphError(f"line {lineno}: expected 'vertex <id> <black|white>'")
            vertices.append((tok[1], tok[2].lower()))
        elif kw == "edge":
            if len(tok) != 4:
                raise GraphError(f"line {lineno}: expected 'edge <id> <end> <end>'")
            edges.append((tok[1], tok[2], tok[3]))
        elif kw == "rotation":
            if len(tok) < 3:
                raise GraphError(f"line {lineno}: expected 'rotation <vertex> <edge> ...'")
            if tok[1] in rotations:
                raise GraphError(f"line {lineno}: rotation for {tok[1]!r} given twice")
            rotations[tok[1]] = tok[2:]
        else:
            raise GraphError(f"line {lineno}: unknown keyword {tok[0]!r}")
    if n is None:
        raise GraphError("missing 'n <count>' line")
    known = {v for v, _ in vertices}
    for v in rotations:
        if v not in known:
            raise GraphError(f"rotation given for unknown vertex {v!r}")
    return make_graph(n, vertices, edges, rotations)


def format_graph(g: DiskGraph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"vertex {v} {c}" for v, c in g.vertices]
    lines += [f"edge {e} {a} {b}" for e, a, b in g.edges]
    lines += [f"rotation {v} {' '.join(r)}" for v, r in g.rotations]
    return "\n".join(lines) + "\n"
