"""Command-line interface.

Every subcommand reads one graph (``--fixture NAME`` or ``--input PATH``) and
prints either a human-readable table or JSON lines (``--format records``).
Exit status: 0 on success, 1 on bad input, 2 when an internal consistency
check fails (including a mismatch in ``report``).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable

from . import fixtures
from .ehrhart import count_lattice_points, ehrhart, hstar_vector, volume_and_degree
from .errors import InvariantError
from .graph import DiskGraph, GraphError, faces, format_graph, graph_type, parse_graph
from .matchings import InvalidFlow, enumerate_flows, enumerate_matchings, enumerate_orientations
from .measurement import evaluate_plucker, plucker_polynomials
from .polytope import build_polytope, dimension_crosscheck, face_lattice, facets
from .positroid import matroid_polytope, positroid_bases, project_psi


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _set(xs) -> str:
    return "{" + ",".join(str(x) for x in sorted(xs)) + "}"


class Out:
    """Collects output lines in either format."""

    def __init__(self, fmt: str, stream):
        self.records = fmt == "records"
        self.stream = stream

    def human(self, line: str = ""):
        if not self.records:
            print(line, file=self.stream)

    def record(self, **fields):
        if self.records:
            print(json.dumps(fields, ensure_ascii=False), file=self.stream)

    def emit(self, line: str, **fields):
        if self.records:
            self.record(**fields)
        else:
            self.human(line)


# ---------------------------------------------------------------------------
# input


def load_graph(args) -> DiskGraph:
    if args.fixture and args.input:
        raise UsageError("--fixture and --input are mutually exclusive")
    if args.fixture:
        try:
            return fixtures.builtin(args.fixture).graph
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if args.input:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
        return parse_graph(text)
    raise UsageError("one of --fixture or --input is required")


def pick_orientation(g: DiskGraph, sources: str | None):
    orients = enumerate_orientations(g)
    if not orients:
        raise UsageError("graph has no perfect orientation")
    if sources is None:
        return orients[0]
    try:
        want = frozenset(int(x) for x in sources.replace("{", "").replace("}", "").split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad source set {sources!r}; expected e.g. 1,3") from None
    for o in orients:
        if o.sources == want:
            return o
    raise UsageError(f"no perfect orientation has source set {_set(want)}")


def parse_weights(g: DiskGraph, pairs: list[str], all_ones: bool) -> dict[str, Fraction]:
    if all_ones and pairs:
        raise UsageError("give either --all-ones or explicit weights, not both")
    if all_ones:
        return {e: Fraction(1) for e in g.edge_ids}
    if not pairs:
        raise UsageError("weights required: edge=num/den ... or --all-ones")
    out = {}
    for p in pairs:
        e, sep, v = p.partition("=")
        if not sep:
            raise UsageError(f"bad weight {p!r}; expected edge=num/den")
        if e not in g.edge_index:
            raise UsageError(f"unknown edge {e!r} in weights")
        try:
            out[e] = Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad rational {v!r} for edge {e}") from None
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(g, args, out):
    F = faces(g).count
    out.emit(
        f"valid: n={g.n}, {len(g.internal)} internal vertices, {g.num_edges} edges, {F} faces, type {graph_type(g)}",
        n=g.n, internal=len(g.internal), edges=g.num_edges, faces=F, type=list(graph_type(g)),
    )


def cmd_type(g, args, out):
    k, n = graph_type(g)
    out.emit(f"({k},{n})", k=k, n=n)


def cmd_matchings(g, args, out):
    ms = enumerate_matchings(g)
    for m in ms:
        out.emit(f"{' '.join(m.edges)}  sources {_set(m.sources)}",
                 edges=list(m.edges), sources=sorted(m.sources))
    out.human(f"{len(ms)} matchings")


def cmd_orientations(g, args, out):
    os_ = enumerate_orientations(g)
    for o in os_:
        arrows = " ".join(f"{e}:{t}->{g.other_end(e, t)}" for e, t in o.tails)
        out.emit(f"sources {_set(o.sources)}  {arrows}", sources=sorted(o.sources), tails=o.to_record())
    out.human(f"{len(os_)} perfect orientations")


def _component_str(c) -> str:
    if c.kind == "cycle":
        return "cycle(" + " ".join(c.edges) + ")"
    return f"walk b{c.source}->b{c.destination}(" + " ".join(c.edges) + ")"


def cmd_flows(g, args, out):
    o = pick_orientation(g, args.orientation)
    fl = enumerate_flows(g, o)
    out.human(f"orientation with sources {_set(o.sources)}")
    for f in fl:
        body = "; ".join(_component_str(c) for c in f.components) or "empty"
        out.emit(f"J={_set(f.destination_set)}  {body}",
                 destination=sorted(f.destination_set), components=f.to_record(),
                 exponent=dict(_sparse(g, f.exponent)))
    out.human(f"{len(fl)} flows")


def _sparse(g, exponent):
    return [(e, x) for e, x in zip(g.edge_ids, exponent) if x]


def cmd_pluecker(g, args, out):
    o = pick_orientation(g, args.orientation)
    out.human(f"orientation with sources {_set(o.sources)}")
    for J, p in plucker_polynomials(g, o).items():
        out.emit(f"p_{_set(J)} = {p!r}", J=list(J),
                 terms=[[c, mono] for c, mono in p.to_records()])


def cmd_evaluate(g, args, out):
    o = pick_orientation(g, args.orientation)
    w = parse_weights(g, args.weights, args.all_ones)
    pv = evaluate_plucker(g, o, w)
    for J, v in pv.values:
        out.emit(f"p_{_set(J)} = {rat(v)}", J=list(J), value=rat(v))


def cmd_positroid(g, args, out):
    p = positroid_bases(g)
    out.emit(f"type ({p.k},{p.n}), {len(p)} bases: " + " ".join(_set(b) for b in p.bases),
             k=p.k, n=p.n, bases=p.to_record())


def cmd_polytope(g, args, out):
    P = build_polytope(g)
    d, f1, hyp = dimension_crosscheck(g)
    out.emit(
        f"{P.num_vertices} vertices in R^{g.num_edges}, dimension {P.dim}; faces of embedding - 1 = {f1}"
        + ("" if hyp else " (some edge lies in no matching)"),
        vertices=P.num_vertices, ambient=g.num_edges, dim=P.dim, faces_minus_one=f1, every_edge_used=hyp,
    )


def cmd_faces(g, args, out):
    L = face_lattice(g)
    covers = L.covers()
    for f in L.faces:
        below = [list(g.edges_of(h)) for h in covers[f.mask]]
        out.emit(f"dim {f.dim:>2}  {' '.join(f.edges) or '(empty)'}  covers {len(below)}",
                 edges=list(f.edges), dim=f.dim, covers=below)
    out.human(f"{len(L.faces)} faces")


def cmd_facets(g, args, out):
    fs = facets(g)
    for f in fs:
        out.emit(f"remove {' '.join(f.edge_class)}  ->  {' '.join(f.subgraph)}",
                 edge_class=list(f.edge_class), subgraph=list(f.subgraph))
    out.human(f"{len(fs)} facets")


def cmd_fvector(g, args, out):
    fv = face_lattice(g).f_vector
    out.emit(",".join(map(str, fv)), f_vector=list(fv))


def cmd_ehrhart(g, args, out):
    if args.dilation is not None:
        if args.dilation < 0:
            raise UsageError("--dilation must be nonnegative")
        c = count_lattice_points(g, args.dilation)
        out.emit(f"L({args.dilation}) = {c}", t=args.dilation, count=c)
        return
    data = ehrhart(g)
    for t, c in enumerate(data.counts):
        out.emit(f"L({t}) = {c}", t=t, count=c)
    out.emit("L(t) = " + data.polynomial_str(), coefficients=[rat(c) for c in data.coefficients])


def cmd_hstar(g, args, out):
    h = hstar_vector(g)
    out.emit(",".join(map(str, h)), hstar=h)


def cmd_volume(g, args, out):
    vol, deg = volume_and_degree(g)
    out.emit(f"{rat(vol)} (normalized {deg})", volume=rat(vol), normalized=deg)


def cmd_matroid(g, args, out):
    Q = matroid_polytope(positroid_bases(g))
    for v in Q.vertices:
        out.emit("(" + ",".join(map(str, v)) + ")", vertex=list(v))
    out.human(f"{len(Q.vertices)} vertices on x_1 + ... + x_n = {Q.k}")


def cmd_project(g, args, out):
    for J, ms in project_psi(g).items():
        out.emit(f"{_set(J)} <- {len(ms)}: " + " | ".join(" ".join(m.edges) for m in ms),
                 basis=list(J), fiber=[list(m.edges) for m in ms])


def cmd_fixture(args, out) -> int:
    if not args.fixture:
        for name in fixtures.available():
            out.emit(name, name=name)
        return 0
    try:
        fx = fixtures.builtin(args.fixture)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if out.records:
        out.record(name=fx.name, graph=format_graph(fx.graph), expected=fx.expected)
    else:
        out.human(f"# {fx.name}")
        out.human(format_graph(fx.graph))
        for k, v in fx.expected.items():
            out.human(f"# expect {k} = {v['value']} ({v['source']})")
    return 0


HSTAR_NOTE = ("note: the published g2n(6) h*-numerator runs two terms together; "
              "it is read as 68t^3 + 15t^4, consistent with degree 164")


def cmd_report(args, out) -> int:
    ok = True
    names = [args.fixture] if args.fixture else list(fixtures.REPORT_SET)
    for name in names:
        try:
            rep = fixtures.validate_fixture(name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        ok &= rep.passed
        for c, line in zip(rep.checks, rep.lines()):
            out.emit(line, fixture=rep.fixture, check=c.name, expected=fixtures._fmt(c.expected),
                     actual=fixtures._fmt(c.actual), source=c.source, passed=c.passed)
        if rep.fixture == "g2n(6)":
            out.emit(HSTAR_NOTE, fixture=rep.fixture, note=HSTAR_NOTE)
    out.emit("all checks passed" if ok else "MISMATCH", passed=ok)
    return 0 if ok else 2


COMMANDS: dict[str, tuple[Callable, str]] = {
    "validate": (cmd_validate, "check the graph and print a summary"),
    "type": (cmd_type, "print the type (k,n)"),
    "matchings": (cmd_matchings, "list almost perfect matchings"),
    "orientations": (cmd_orientations, "list perfect orientations"),
    "flows": (cmd_flows, "list flows in one orientation"),
    "pluecker": (cmd_pluecker, "Plücker coordinates as Laurent polynomials"),
    "evaluate": (cmd_evaluate, "Plücker coordinates at positive rational weights"),
    "positroid": (cmd_positroid, "bases of the positroid"),
    "polytope": (cmd_polytope, "vertex count and dimension of P(G)"),
    "faces": (cmd_faces, "the face lattice with cover relations"),
    "facets": (cmd_facets, "facets as edge classes"),
    "fvector": (cmd_fvector, "the f-vector"),
    "ehrhart": (cmd_ehrhart, "lattice-point counts and Ehrhart polynomial"),
    "hstar": (cmd_hstar, "the h*-vector"),
    "volume": (cmd_volume, "Euclidean and normalized volume"),
    "matroid": (cmd_matroid, "vertices of the matroid polytope"),
    "project": (cmd_project, "fibers of the projection to the matroid polytope"),
    "fixture": (cmd_fixture, "list built-in fixtures or print one"),
    "report": (cmd_report, "recompute the published values and compare"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plabic", description="Matching polytopes of plane-bipartite graphs.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_, description=help_)
        p.add_argument("--fixture", metavar="NAME")
        p.add_argument("--input", metavar="PATH")
        p.add_argument("--format", choices=("human", "records"), default="human")
        if name in ("flows", "pluecker", "evaluate"):
            p.add_argument("--orientation", metavar="SOURCE-SET",
                           help="comma-separated source set, e.g. 1,3")
        if name == "evaluate":
            p.add_argument("weights", nargs="*", metavar="EDGE=NUM/DEN")
            p.add_argument("--all-ones", action="store_true")
        if name == "ehrhart":
            p.add_argument("--dilation", type=int, metavar="T")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        out = Out(args.format, stdout)
        fn = COMMANDS[args.command][0]
        if args.command in ("fixture", "report"):
            if args.input:
                raise UsageError(f"{args.command} takes --fixture only")
            return fn(args, out)
        g = load_graph(args)
        fn(g, args, out)
        return 0
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (GraphError, InvalidFlow, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (InvariantError, AssertionError) as exc:
        print(f"internal error: {exc}", file=stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
