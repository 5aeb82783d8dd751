"""Almost perfect matchings, perfect orientations and flows.

The three families are in bijection for a fixed graph.  A matching ``M``
determines the orientation in which an edge points away from its black end
exactly when it lies in ``M``; a flow in a fixed orientation is the set of
edges on which that orientation disagrees with another one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import BLACK, DiskGraph, WHITE, boundary_index, natural_key


class InvalidFlow(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    """An almost perfect matching.

    ``covered`` is the set of matched boundary indices; ``sources`` is the
    source set of the corresponding perfect orientation.  The two agree when
    every boundary vertex has a white neighbour.
    """

    edges: tuple[str, ...]
    mask: int
    covered: frozenset[int]
    sources: frozenset[int]

    def __contains__(self, edge: str) -> bool:
        return edge in self.edges

    def to_record(self) -> list[str]:
        return list(self.edges)


@dataclass(frozen=True)
class Orientation:
    """A perfect orientation, stored as the tail of every edge."""

    tails: tuple[tuple[str, str], ...]
    sources: frozenset[int]

    @property
    def tail(self) -> dict[str, str]:
        return dict(self.tails)

    def to_record(self) -> list[list[str]]:
        return [[e, t] for e, t in self.tails]


@dataclass(frozen=True)
class FlowComponent:
    kind: str  # "cycle" or "walk"
    edges: tuple[str, ...]  # in traversal order
    source: int | None = None
    destination: int | None = None

    def to_record(self):
        if self.kind == "cycle":
            return {"cycle": list(self.edges)}
        return {"walk": [self.source, self.destination], "edges": list(self.edges)}


@dataclass(frozen=True)
class Flow:
    """Vertex-disjoint walks and cycles inside an orientation.

    ``exponent`` is indexed like ``graph.edge_ids``: +1 on flow edges that the
    orientation directs from white to black, -1 on black-to-white edges.
    """

    mask: int
    components: tuple[FlowComponent, ...]
    destination_set: frozenset[int]
    exponent: tuple[int, ...] = field(repr=False)

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def is_conservative(self) -> bool:
        return all(c.kind == "cycle" for c in self.components)

    def to_record(self):
        return [c.to_record() for c in self.components]


# ---------------------------------------------------------------------------
# matchings


def _make_matching(g: DiskGraph, mask: int) -> Matching:
    edges = g.edges_of(mask)
    covered = frozenset(i for i, e in g.boundary_edge.items() if mask >> g.edge_index[e] & 1)
    sources = frozenset(
        i for i in range(1, g.n + 1)
        if (i in covered) == (g.color[g.boundary_neighbor[i]] == WHITE)
    )
    return Matching(edges, mask, covered, sources)


def matching_from_edges(g: DiskGraph, edges) -> Matching:
    m = _make_matching(g, g.mask_of(edges))
    if not is_matching(g, m.mask):
        raise ValueError(f"{sorted(edges, key=natural_key)} is not an almost perfect matching")
    return m


def is_matching(g: DiskGraph, mask: int) -> bool:
    idx = g.edge_index
    for v in g.internal:
        if sum(mask >> idx[e] & 1 for e in g.incident[v]) != 1:
            return False
    return True


def enumerate_matching_masks(g: DiskGraph) -> list[int]:
    """Bitmasks of all almost perfect matchings, in canonical order."""
    idx = g.edge_index
    covered: set[str] = set()
    found: list[int] = []
    order = list(g.internal)

    def options(v):
        out = []
        for e in g.incident[v]:
            w = g.other_end(e, v)
            if w in covered:
                continue
            out.append((e, w))
        return out

    def rec(mask):
        # branch on the uncovered vertex with the fewest options; zero-option
        # and one-option vertices are dead ends and forced moves respectively
        best = None
        for v in order:
            if v in covered:
                continue
            opts = options(v)
            if best is None or len(opts) < len(best[1]):
                best = (v, opts)
                if len(opts) <= 1:
                    break
        if best is None:
            found.append(mask)
            return
        v, opts = best
        for e, w in opts:
            covered.add(v)
            internal_w = w in g.color
            if internal_w:
                covered.add(w)
            rec(mask | 1 << idx[e])
            covered.discard(v)
            if internal_w:
                covered.discard(w)

    rec(0)
    found.sort(key=_mask_key)
    return found


def _mask_key(mask: int):
    bits = []
    i = 0
    while mask:
        if mask & 1:
            bits.append(i)
        mask >>= 1
        i += 1
    return bits


def enumerate_matchings(g: DiskGraph) -> list[Matching]:
    return [_make_matching(g, m) for m in enumerate_matching_masks(g)]


# ---------------------------------------------------------------------------
# orientations


def matching_to_orientation(g: DiskGraph, m: Matching) -> Orientation:
    tails = []
    for e in g.edge_ids:
        tails.append((e, g.black_end(e) if m.mask >> g.edge_index[e] & 1 else g.white_end(e)))
    return _make_orientation(g, tails)


def orientation_to_matching(g: DiskGraph, o: Orientation) -> Matching:
    mask = 0
    for e, t in o.tails:
        if t == g.black_end(e):
            mask |= 1 << g.edge_index[e]
    return _make_matching(g, mask)


def _make_orientation(g: DiskGraph, tails) -> Orientation:
    tails = tuple(tails)
    sources = frozenset(
        i for i, e in g.boundary_edge.items() if dict(tails)[e] == f"b{i}"
    )
    return Orientation(tails, sources)


def is_perfect_orientation(g: DiskGraph, tails: dict[str, str]) -> bool:
    for v, c in g.vertices:
        outs = sum(1 for e in g.incident[v] if tails[e] == v)
        ins = len(g.incident[v]) - outs
        if c == BLACK and outs != 1:
            return False
        if c == WHITE and ins != 1:
            return False
    return True


def enumerate_orientations(g: DiskGraph) -> list[Orientation]:
    """Perfect orientations found by a direct search over edge directions.

    Independent of the matching enumeration; the two are compared in tests.
    """
    order = list(g.edge_ids)
    outs = {v: 0 for v in g.internal}
    ins = {v: 0 for v in g.internal}
    remaining = {v: len(g.incident[v]) for v in g.internal}
    tails: dict[str, str] = {}
    result = []

    def ok(v):
        c = g.color[v]
        if c == BLACK:
            return outs[v] <= 1 and outs[v] + remaining[v] >= 1
        return ins[v] <= 1 and ins[v] + remaining[v] >= 1

    def rec(i):
        if i == len(order):
            result.append(_make_orientation(g, [(e, tails[e]) for e in order]))
            return
        e = order[i]
        a, b = g.endpoints[e]
        for tail, head in ((a, b), (b, a)):
            tails[e] = tail
            touched = [x for x in (a, b) if x in outs]
            for x in touched:
                remaining[x] -= 1
            if tail in outs:
                outs[tail] += 1
            if head in ins:
                ins[head] += 1
            if all(ok(x) for x in touched):
                rec(i + 1)
            if tail in outs:
                outs[tail] -= 1
            if head in ins:
                ins[head] -= 1
            for x in touched:
                remaining[x] += 1
        del tails[e]

    rec(0)
    result.sort(key=lambda o: _mask_key(orientation_to_matching(g, o).mask))
    return result


# ---------------------------------------------------------------------------
# flows


def _exponent(g: DiskGraph, o: Orientation, mask: int) -> tuple[int, ...]:
    tail = o.tail
    vec = []
    for i, e in enumerate(g.edge_ids):
        if not mask >> i & 1:
            vec.append(0)
        else:
            vec.append(-1 if tail[e] == g.black_end(e) else 1)
    return tuple(vec)


def decompose(g: DiskGraph, o: Orientation, mask: int) -> Flow:
    """Split an edge set into vertex-disjoint directed walks and cycles of ``o``.

    Every internal vertex must meet the set in zero edges or in exactly one
    incoming and one outgoing edge; otherwise :class:`InvalidFlow` is raised.
    """
    tail = o.tail
    idx = g.edge_index
    out_edge: dict[str, str] = {}
    in_count: dict[str, int] = {}
    for e in g.edges_of(mask):
        t = tail[e]
        h = g.other_end(e, t)
        if t in out_edge:
            raise InvalidFlow(f"vertex {t!r} has two outgoing flow edges")
        out_edge[t] = e
        in_count[h] = in_count.get(h, 0) + 1
        if in_count[h] > 1:
            raise InvalidFlow(f"vertex {h!r} has two incoming flow edges")
    for v in g.internal:
        if (v in out_edge) != (in_count.get(v, 0) == 1):
            raise InvalidFlow(f"flow is not balanced at vertex {v!r}")
    comps = []
    seen = 0
    for i in sorted(g.boundary_edge):
        b = f"b{i}"
        if b not in out_edge:
            continue
        walk = []
        x = b
        while True:
            e = out_edge[x]
            walk.append(e)
            seen |= 1 << idx[e]
            x = g.other_end(e, x)
            if boundary_index(x) is not None:
                break
        comps.append(FlowComponent("walk", tuple(walk), i, boundary_index(x)))
    for e in g.edges_of(mask):
        if seen >> idx[e] & 1:
            continue
        start = tail[e]
        cyc = []
        x = start
        while True:
            f = out_edge[x]
            cyc.append(f)
            seen |= 1 << idx[f]
            x = g.other_end(f, x)
            if x == start:
                break
        comps.append(FlowComponent("cycle", _rotate_min(cyc)))
    comps.sort(key=lambda c: (c.kind != "walk", c.source or 0, [natural_key(e) for e in c.edges]))
    srcs = {c.source for c in comps if c.kind == "walk"}
    dsts = {c.destination for c in comps if c.kind == "walk"}
    if not srcs <= o.sources:
        raise InvalidFlow("a walk starts outside the source set")
    if dsts & o.sources:
        raise InvalidFlow("a walk ends inside the source set")
    J = frozenset((o.sources - srcs) | dsts)
    return Flow(mask, tuple(comps), J, _exponent(g, o, mask))


def _rotate_min(cyc):
    i = min(range(len(cyc)), key=lambda j: natural_key(cyc[j]))
    return tuple(cyc[i:] + cyc[:i])


def enumerate_flows(g: DiskGraph, o: Orientation) -> list[Flow]:
    """All flows in ``o`` (vertex-disjoint walks and cycles), empty flow first."""
    tail = o.tail
    idx = g.edge_index
    outs = {v: [e for e in g.incident[v] if tail[e] == v] for v in g.internal}
    ins = {v: [e for e in g.incident[v] if tail[e] != v] for v in g.internal}
    order = list(g.internal)
    state: dict[str, bool] = {}  # edge -> used, once one endpoint decided
    masks = []

    def choices(v):
        yield frozenset()
        for a in ins[v]:
            for b in outs[v]:
                yield frozenset((a, b))

    def rec(i, mask):
        if i == len(order):
            masks.append(mask)
            return
        v = order[i]
        for ch in choices(v):
            assigned = []
            good = True
            for e in g.incident[v]:
                used = e in ch
                w = g.other_end(e, v)
                if w in g.color and e in state:
                    if state[e] != used:
                        good = False
                        break
                else:
                    state[e] = used
                    assigned.append(e)
            if good:
                add = 0
                for e in ch:
                    add |= 1 << idx[e]
                rec(i + 1, mask | add)
            for e in assigned:
                del state[e]

    rec(0, 0)
    masks = sorted(set(masks), key=_mask_key)
    return [decompose(g, o, m) for m in masks]


def flow_between(g: DiskGraph, o1: Orientation, o2: Orientation) -> Flow:
    """The flow in ``o1`` whose reversal gives ``o2`` (disagreement edges)."""
    t1, t2 = o1.tail, o2.tail
    mask = 0
    for e in g.edge_ids:
        if t1[e] != t2[e]:
            mask |= 1 << g.edge_index[e]
    return decompose(g, o1, mask)


def reverse_flow(g: DiskGraph, o: Orientation, f: Flow) -> Orientation:
    # revalidates: f must be a flow in o, not merely an edge set
    check = decompose(g, o, f.mask)
    if check.exponent != f.exponent:
        raise InvalidFlow("flow directions disagree with the orientation")
    idx = g.edge_index
    tails = []
    for e, t in o.tails:
        if f.mask >> idx[e] & 1:
            t = g.other_end(e, t)
        tails.append((e, t))
    return _make_orientation(g, tails)


def matching_adjacent(g: DiskGraph, m1: Matching, m2: Matching) -> bool:
    """True iff the symmetric difference is one cycle or one boundary path."""
    diff = m1.mask ^ m2.mask
    if not diff:
        return False
    parent: dict[str, str] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges_of(diff):
        a, b = g.endpoints[e]
        parent[find(a)] = find(b)
    return len({find(x) for x in parent}) == 1
