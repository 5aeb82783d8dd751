"""Lattice-point counts of dilates of P(G), Ehrhart polynomial and h*-vector.

Lattice points of ``t P(G)`` are nonnegative integer edge labellings whose
sum around every internal vertex is ``t``; they are counted directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from . import kernels
from .errors import InvariantError
from .graph import DiskGraph
from .polytope import affine_rank, chi
from .matchings import enumerate_matching_masks


@dataclass(frozen=True)
class CountingPlan:
    """Edge order plus per-edge endpoint and closing data for the counting kernel."""

    ea: np.ndarray
    eb: np.ndarray
    close_a: np.ndarray
    close_b: np.ndarray
    nv: int
    isolated: bool


def counting_plan(g: DiskGraph) -> CountingPlan:
    # BFS order on internal vertices; each edge is filed under whichever
    # endpoint comes first, so every vertex is closed at its own turn
    internal = list(g.internal)
    pos: dict[str, int] = {}
    for start in internal:
        if start in pos:
            continue
        queue = [start]
        pos[start] = len(pos)
        while queue:
            v = queue.pop(0)
            for e in g.rotation[v]:
                w = g.other_end(e, v)
                if w in g.color and w not in pos:
                    pos[w] = len(pos)
                    queue.append(w)

    def key(e):
        ps = sorted(pos[v] for v in g.endpoints[e] if v in pos)
        return (ps[0], ps[-1] if len(ps) > 1 else -1, g.edge_index[e])

    order = sorted(g.edge_ids, key=key)
    m = len(order)
    ea = np.empty(m, dtype=np.int64)
    eb = np.full(m, -1, dtype=np.int64)
    for k, e in enumerate(order):
        ps = sorted(pos[v] for v in g.endpoints[e] if v in pos)
        ea[k] = ps[0]
        if len(ps) > 1:
            eb[k] = ps[1]
    last = {}
    for k in range(m):
        last[int(ea[k])] = k
        if eb[k] >= 0:
            last[int(eb[k])] = k
    close_a = np.array([last[int(ea[k])] == k for k in range(m)], dtype=np.bool_)
    close_b = np.array([eb[k] >= 0 and last[int(eb[k])] == k for k in range(m)], dtype=np.bool_)
    isolated = len(last) < len(internal)
    return CountingPlan(ea, eb, close_a, close_b, len(internal), isolated)


def count_lattice_points(g: DiskGraph, t: int, plan: CountingPlan | None = None) -> int:
    """Number of lattice points in ``t P(G)``."""
    if t < 0:
        raise ValueError("dilation must be nonnegative")
    if t == 0:
        return 1
    plan = plan or counting_plan(g)
    if plan.isolated:
        return 0
    return kernels.count_solutions(t, plan.ea, plan.eb, plan.close_a, plan.close_b, plan.nv)


def _interpolate(values: list[int]) -> list[Fraction]:
    """Coefficients (constant first) of the polynomial through ``(i, values[i])``."""
    n = len(values)
    coeffs = [Fraction(0)] * n
    for i, y in enumerate(values):
        # Lagrange basis for node i
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for a in range(len(basis) - 1):
                basis[a] -= j * basis[a + 1]
            denom *= i - j
        for a in range(n):
            coeffs[a] += Fraction(y) * basis[a] / denom
    return coeffs


def _eval(coeffs, t) -> Fraction:
    return sum((c * t**i for i, c in enumerate(coeffs)), Fraction(0))


def hstar_from_counts(counts: list[int], d: int) -> tuple[int, ...]:
    """h*_j = sum_{i<=j} (-1)^(j-i) C(d+1, j-i) L(i), trailing zeros dropped."""
    h = []
    for j in range(d + 1):
        h.append(sum((-1) ** (j - i) * comb(d + 1, j - i) * counts[i] for i in range(j + 1)))
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return tuple(h)


@dataclass(frozen=True)
class EhrhartData:
    dim: int
    counts: tuple[int, ...]  # L(0), ..., L(dim + 1)
    coefficients: tuple[Fraction, ...]  # constant term first
    hstar: tuple[int, ...]

    @property
    def volume(self) -> Fraction:
        return self.coefficients[-1]

    @property
    def normalized_volume(self) -> int:
        v = self.volume * factorial(self.dim)
        if v.denominator != 1:
            raise InvariantError(f"normalized volume {v} is not an integer")
        return int(v)

    def __call__(self, t: int) -> Fraction:
        return _eval(self.coefficients, t)

    def polynomial_str(self, var: str = "t") -> str:
        parts = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            parts.append(f"{c}" if not mono else (mono if c == 1 else f"({c})*{mono}"))
        return " + ".join(parts) or "0"


def polytope_dimension(g: DiskGraph) -> int:
    masks = enumerate_matching_masks(g)
    if not masks:
        raise ValueError("graph has no almost perfect matching; P(G) is empty")
    return affine_rank([chi(g, m) for m in masks])


def ehrhart(g: DiskGraph, dim: int | None = None) -> EhrhartData:
    """Ehrhart polynomial by interpolation through ``L(0..d)``, checked at ``d+1``."""
    d = polytope_dimension(g) if dim is None else dim
    plan = counting_plan(g)
    counts = [count_lattice_points(g, t, plan) for t in range(d + 2)]
    coeffs = _interpolate(counts[: d + 1])
    if _eval(coeffs, d + 1) != counts[d + 1]:
        raise InvariantError(
            f"count mismatch at t={d + 1}: polynomial gives {_eval(coeffs, d + 1)}, direct count {counts[d + 1]}"
        )
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) - 1 != d:
        raise InvariantError(f"Ehrhart degree {len(coeffs) - 1} differs from dimension {d}")
    return EhrhartData(d, tuple(counts), tuple(coeffs), hstar_from_counts(counts, d))


def ehrhart_polynomial(g: DiskGraph) -> list[Fraction]:
    return list(ehrhart(g).coefficients)


def hstar_vector(g: DiskGraph, data: EhrhartData | None = None) -> list[int]:
    h = (data or ehrhart(g)).hstar
    if h[0] != 1 or any(x < 0 for x in h):
        raise InvariantError(f"nonconvex/arithmetic error: h* = {h}")
    return list(h)


def volume_and_degree(g: DiskGraph, data: EhrhartData | None = None) -> tuple[Fraction, int]:
    data = data or ehrhart(g)
    deg = data.normalized_volume
    if deg != sum(data.hstar):
        raise InvariantError(f"normalized volume {deg} differs from sum of h* {sum(data.hstar)}")
    return data.volume, deg
