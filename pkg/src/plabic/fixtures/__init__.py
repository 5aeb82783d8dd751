"""Built-in example graphs with their expected invariants.

Static graphs ship as ``data/*.graph``; the ``g2n(n)`` family is generated.
``validate_fixture`` recomputes every expectation and reports each check.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import comb, factorial

from ..graph import DiskGraph, faces, graph_type, make_graph, parse_graph

STATIC = ("triv-path", "fig1-p2", "fig2-p1p1", "sect2-example", "g24", "g26-alt", "g36")
REPORT_SET = ("g24", "g2n(5)", "g2n(6)", "g36", "g26-alt")
_ALIASES = {"g25": "g2n(5)", "g26": "g2n(6)"}
_G2N = re.compile(r"^g2n(?:\((\d+)\)|-(\d+))$")


def g2n(n: int) -> DiskGraph:
    """Top-cell graph of type (2, n): a fan of quadrilateral faces.

    One white hub ``w0`` carries the leg at ``b1`` and an edge to every black
    vertex ``u1..u_m`` (``m = n - 2``).  Consecutive black vertices are
    joined through the white vertices ``w2..w_m``, each carrying one leg; the
    last black vertex also carries ``b2`` and the first carries ``b_n``.
    ``g2n(4)`` is the square graph ``g24``.
    """
    if n < 4:
        raise ValueError("g2n needs n >= 4")
    m = n - 2
    vertices = [("w0", "white")] + [(f"u{j}", "black") for j in range(1, m + 1)]
    vertices += [(f"w{j}", "white") for j in range(2, m + 1)]
    edges = [(f"e{i}", f"b{i}", None) for i in range(1, n + 1)]
    leg = {i: f"e{i}" for i in range(1, n + 1)}
    counter = n

    def new(a, b):
        nonlocal counter
        counter += 1
        edges.append((f"e{counter}", a, b))
        return f"e{counter}"

    north = {j: new("w0", f"u{j}") for j in range(1, m + 1)}
    # east edge of u_j goes to w_{j+1}; diagonal of u_j goes to w_j
    east = {j: new(f"u{j}", f"w{j + 1}") for j in range(1, m)}
    diag = {j: new(f"u{j}", f"w{j}") for j in range(2, m + 1)}
    ends = {1: "w0", 2: f"u{m}", n: "u1"}
    for j in range(2, m + 1):
        ends[n - j + 1] = f"w{j}"
    edges = [(e, a, b if b is not None else ends[int(a[1:])]) for e, a, b in edges]

    rot = {"w0": [leg[1]] + [north[j] for j in range(m, 0, -1)]}
    rot["u1"] = [north[1], east[1], leg[n]]
    for j in range(2, m + 1):
        rot[f"u{j}"] = [north[j], east[j] if j < m else leg[2], diag[j]]
        rot[f"w{j}"] = [diag[j], leg[n - j + 1], east[j - 1]]
    return make_graph(n, vertices, edges, rot)


def canonical_name(name: str) -> str:
    name = _ALIASES.get(name.strip().lower(), name.strip().lower())
    m = _G2N.match(name)
    if m:
        return f"g2n({int(m.group(1) or m.group(2))})"
    if name in STATIC:
        return name
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(STATIC)}, g2n(n) for n >= 4")


def _data(fname: str) -> str:
    return resources.files(__package__).joinpath("data", fname).read_text()


@lru_cache(maxsize=None)
def _expectations() -> dict:
    return json.loads(_data("expectations.json"))


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: DiskGraph
    expected: dict = field(default_factory=dict, compare=False)


@lru_cache(maxsize=None)
def builtin(name: str) -> Fixture:
    name = canonical_name(name)
    m = _G2N.match(name)
    if m:
        n = int(m.group(1))
        graph = g2n(n)
        expected = {
            "type": {"value": [2, n], "source": "top cell of Gr(2,n)"},
            "dim": {"value": 2 * (n - 2), "source": "top cell dimension"},
            "f0": {"value": comb(n, 3) + n - 1, "source": "published vertex-count formula"},
            "bases": {"value": [list(p) for p in _pairs(n)], "source": "top cell of Gr(2,n)"},
        }
        extra = _expectations().get("g24" if n == 4 else name, {})
        expected.update({k: v for k, v in extra.items() if k not in ("lattice_points_t2", "double_fiber")})
    else:
        graph = parse_graph(_data(f"{name}.graph"))
        expected = dict(_expectations().get(name, {}))
    return Fixture(name, graph, expected)


def _pairs(n):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def available() -> list[str]:
    return list(STATIC) + ["g2n(n)"]


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object
    source: str = ""

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class FixtureReport:
    fixture: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            out.append(f"{mark} {self.fixture} {c.name}: expected {_fmt(c.expected)}, got {_fmt(c.actual)}")
        return out


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def _norm(key: str, value):
    if key in ("volume",):
        return Fraction(value)
    if key == "bases":
        return tuple(tuple(b) for b in value)
    if isinstance(value, list):
        return tuple(value)
    return value


def validate_fixture(name: str) -> FixtureReport:
    """Recompute every expectation of a fixture; failures become report entries."""
    from ..ehrhart import count_lattice_points, ehrhart
    from ..matchings import enumerate_matchings
    from ..polytope import face_lattice
    from ..positroid import positroid_bases, project_psi

    fx = builtin(name)
    g = fx.graph
    cache: dict = {}

    def lattice():
        if "lattice" not in cache:
            cache["lattice"] = face_lattice(g)
        return cache["lattice"]

    def ehr():
        if "ehrhart" not in cache:
            cache["ehrhart"] = ehrhart(g, lattice().dim)
        return cache["ehrhart"]

    compute = {
        "type": lambda: tuple(graph_type(g)),
        "matchings": lambda: len(enumerate_matchings(g)),
        "faces": lambda: faces(g).count,
        "dim": lambda: lattice().dim,
        "f0": lambda: lattice().f_vector[0] if lattice().dim > 0 else len(lattice().matchings),
        "f_vector": lambda: lattice().f_vector,
        "hstar": lambda: ehr().hstar,
        "volume": lambda: ehr().volume,
        "degree": lambda: ehr().normalized_volume,
        "bases": lambda: positroid_bases(g).bases,
        "lattice_points_t2": lambda: count_lattice_points(g, 2),
        "double_fiber": lambda: next(
            (J for J, ms in project_psi(g).items() if len(ms) == 2), None
        ),
    }
    checks = []
    for key, entry in fx.expected.items():
        expected = _norm(key, entry["value"])
        try:
            actual = compute[key]()
        except Exception as exc:  # report, don't raise
            actual = f"error: {exc}"
        checks.append(Check(key, expected, actual, entry.get("source", "")))
    if "degree" in fx.expected and "hstar" in fx.expected:
        checks.append(Check("sum(h*) = degree", ehr().normalized_volume, sum(ehr().hstar), "consistency"))
    if "volume" in fx.expected and "degree" in fx.expected:
        d = lattice().dim
        checks.append(Check("d! * volume = degree", ehr().normalized_volume, ehr().volume * factorial(d), "consistency"))
    return FixtureReport(fx.name, tuple(checks))
