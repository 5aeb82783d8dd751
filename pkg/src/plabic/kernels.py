"""Hot numeric loops.

Every kernel is written once as plain Python over numpy arrays.  When numba
is importable the same source is compiled with ``@njit``; setting
``PLABIC_NO_NUMBA=1`` in the environment (before import) forces the
uncompiled path.  The modular-rank kernel additionally has a vectorized numpy
formulation, used on the fallback path because it is much faster than the
scalar loop without compilation.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
except ImportError:  # pragma: no cover
    numba = None

_DISABLED = os.environ.get("PLABIC_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")
USE_NUMBA = numba is not None and not _DISABLED

# prime below 2**31, so products of residues fit in int64
PRIME = 2147483647


def _maybe_jit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# lattice points of t * P(G)


def count_solutions_py(t, ea, eb, close_a, close_b, nv):
    """Count nonnegative integer edge labellings with every vertex sum ``t``.

    Edges are visited in the given order.  ``ea[k]`` / ``eb[k]`` are the
    internal endpoints of edge ``k`` (``eb[k] == -1`` for a boundary edge);
    ``close_a[k]`` is set when edge ``k`` is the last one at ``ea[k]``, which
    forces its value.  Depth-first with an explicit stack.
    """
    m = ea.shape[0]
    rem = np.full(nv, t, dtype=np.int64)
    val = np.zeros(m + 1, dtype=np.int64)
    top = np.zeros(m + 1, dtype=np.int64)
    count = 0
    k = 0
    descending = True
    while True:
        if descending:
            if k == m:
                count += 1
                k -= 1
                descending = False
                if k < 0:
                    break
                continue
            a = ea[k]
            b = eb[k]
            ub = rem[a]
            if b >= 0 and rem[b] < ub:
                ub = rem[b]
            lo = 0
            hi = ub
            ok = True
            if close_a[k]:
                lo = rem[a]
                hi = lo
                if lo > ub:
                    ok = False
                elif close_b[k] and rem[b] != lo:
                    ok = False
            elif close_b[k]:
                lo = rem[b]
                hi = lo
                if lo > ub:
                    ok = False
            if not ok:
                k -= 1
                descending = False
                if k < 0:
                    break
                continue
            val[k] = lo
            top[k] = hi
            rem[a] -= lo
            if b >= 0:
                rem[b] -= lo
            k += 1
        else:
            a = ea[k]
            b = eb[k]
            if val[k] < top[k]:
                val[k] += 1
                rem[a] -= 1
                if b >= 0:
                    rem[b] -= 1
                k += 1
                descending = True
            else:
                rem[a] += val[k]
                if b >= 0:
                    rem[b] += val[k]
                k -= 1
                if k < 0:
                    break
    return count


count_solutions_nb = _maybe_jit(count_solutions_py)


def count_solutions(t, ea, eb, close_a, close_b, nv):
    fn = count_solutions_nb if USE_NUMBA else count_solutions_py
    return int(fn(np.int64(t), ea, eb, close_a, close_b, np.int64(nv)))


# ---------------------------------------------------------------------------
# affine rank modulo a prime, one face at a time


def _modpow(base, exp, mod):
    result = 1
    base %= mod
    while exp > 0:
        if exp & 1:
            result = result * base % mod
        base = base * base % mod
        exp >>= 1
    return result


_modpow_nb = _maybe_jit(_modpow)


def _affine_ranks_loop(vectors, members, p):
    nfaces = members.shape[0]
    m = vectors.shape[0]
    ncol = vectors.shape[1]
    out = np.empty(nfaces, dtype=np.int64)
    work = np.empty((m, ncol), dtype=np.int64)
    for f in range(nfaces):
        first = -1
        rows = 0
        for i in range(m):
            if members[f, i]:
                if first < 0:
                    first = i
                else:
                    for c in range(ncol):
                        work[rows, c] = (vectors[i, c] - vectors[first, c]) % p
                    rows += 1
        if first < 0:
            out[f] = -1
            continue
        r = 0
        for c in range(ncol):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if work[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for cc in range(ncol):
                    tmp = work[r, cc]
                    work[r, cc] = work[piv, cc]
                    work[piv, cc] = tmp
            inv = _MODPOW(work[r, c], p - 2, p)
            for cc in range(ncol):
                work[r, cc] = work[r, cc] * inv % p
            for i in range(r + 1, rows):
                fac = work[i, c]
                if fac != 0:
                    for cc in range(ncol):
                        work[i, cc] = (work[i, cc] - fac * work[r, cc]) % p
            r += 1
        out[f] = r
    return out


_MODPOW = _modpow_nb
affine_ranks_modp_nb = _maybe_jit(_affine_ranks_loop)


def affine_ranks_modp_np(vectors, members, p=PRIME):
    """Vectorized numpy twin of the loop kernel."""
    out = np.empty(members.shape[0], dtype=np.int64)
    for f in range(members.shape[0]):
        rows = vectors[members[f]]
        if rows.shape[0] == 0:
            out[f] = -1
            continue
        A = (rows[1:] - rows[0]) % p
        r = 0
        for c in range(A.shape[1]):
            if r == A.shape[0]:
                break
            nz = np.flatnonzero(A[r:, c])
            if nz.size == 0:
                continue
            piv = r + nz[0]
            if piv != r:
                A[[r, piv]] = A[[piv, r]]
            inv = pow(int(A[r, c]), p - 2, p)
            A[r] = A[r] * inv % p
            col = A[r + 1:, c].copy()
            A[r + 1:] = (A[r + 1:] - col[:, None] * A[r]) % p
            r += 1
        out[f] = r
    return out


def affine_ranks_modp(vectors, members, p=PRIME):
    """Affine rank mod ``p`` of the rows of ``vectors`` selected by each row of ``members``.

    Returns -1 for an empty selection.  A lower bound on the rational rank.
    """
    vectors = np.ascontiguousarray(vectors, dtype=np.int64)
    members = np.ascontiguousarray(members, dtype=np.bool_)
    if USE_NUMBA:
        return affine_ranks_modp_nb(vectors, members, np.int64(p))
    return affine_ranks_modp_np(vectors, members, p)
