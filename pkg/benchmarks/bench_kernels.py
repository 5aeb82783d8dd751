"""Compare the compiled kernels with their uncompiled fallbacks.

    python3 benchmarks/bench_kernels.py [--fixture g36] [--max-t 4] [--repeat 3]

Counting: lattice points of t*P(G) for t = 1..max-t, numba vs plain Python.
Ranks: modular affine ranks of every face of the lattice, numba loop vs
vectorized numpy.  Results of both paths are compared before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from plabic import kernels
from plabic.ehrhart import counting_plan
from plabic.fixtures import builtin
from plabic.matchings import enumerate_matching_masks
from plabic.polytope import chi, union_closure


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_counting(g, max_t, repeat):
    plan = counting_plan(g)
    args = (plan.ea, plan.eb, plan.close_a, plan.close_b, np.int64(plan.nv))
    kernels.count_solutions_nb(np.int64(1), *args)  # compile / load cache
    rows = []
    for t in range(1, max_t + 1):
        tn, a = best_of(lambda: kernels.count_solutions_nb(np.int64(t), *args), repeat)
        tp, b = best_of(lambda: kernels.count_solutions_py(t, *args), 1)
        assert a == b, (t, a, b)
        rows.append((t, int(a), tn, tp))
    return rows


def bench_ranks(g, repeat):
    masks = enumerate_matching_masks(g)
    faces = sorted(union_closure(masks))
    vecs = np.array([chi(g, m) for m in masks], dtype=np.int64)
    member = np.array([[m & ~h == 0 for m in masks] for h in faces], dtype=np.bool_)
    p = np.int64(kernels.PRIME)
    kernels.affine_ranks_modp_nb(vecs[:2], member[:1, :2], p)
    tn, a = best_of(lambda: kernels.affine_ranks_modp_nb(vecs, member, p), repeat)
    tp, b = best_of(lambda: kernels.affine_ranks_modp_np(vecs, member, kernels.PRIME), repeat)
    assert np.array_equal(a, b)
    return len(faces), tn, tp


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fixture", default="g36")
    ap.add_argument("--max-t", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    g = builtin(args.fixture).graph
    print(f"fixture {args.fixture}: {len(g.internal)} internal vertices, {g.num_edges} edges")
    print(f"{'t':>3} {'L(t)':>10} {'numba s':>10} {'python s':>10} {'speedup':>8}")
    for t, c, tn, tp in bench_counting(g, args.max_t, args.repeat):
        print(f"{t:>3} {c:>10} {tn:>10.4f} {tp:>10.4f} {tp / max(tn, 1e-9):>8.0f}x")
    n, tn, tp = bench_ranks(g, args.repeat)
    print(f"modular ranks of {n} faces: numba {tn:.4f} s, numpy {tp:.4f} s ({tp / max(tn, 1e-9):.0f}x)")


if __name__ == "__main__":
    main()
