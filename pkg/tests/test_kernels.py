import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plabic import kernels
from plabic.ehrhart import counting_plan
from plabic.fixtures import builtin
from plabic.polytope import affine_rank


@pytest.mark.parametrize("name", ["g24", "g25", "fig1-p2", "sect2-example"])
def test_counting_compiled_matches_python(name):
    plan = counting_plan(builtin(name).graph)
    args = (plan.ea, plan.eb, plan.close_a, plan.close_b, np.int64(plan.nv))
    for t in range(5):
        assert kernels.count_solutions_nb(np.int64(t), *args) == kernels.count_solutions_py(t, *args)


matrices = st.integers(1, 6).flatmap(
    lambda cols: st.lists(st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), min_size=1, max_size=7)
)


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_modular_rank_paths_agree(rows, data):
    vecs = np.array(rows, dtype=np.int64)
    members = np.array(
        [data.draw(st.lists(st.booleans(), min_size=len(rows), max_size=len(rows))) for _ in range(3)],
        dtype=np.bool_,
    )
    a = kernels.affine_ranks_modp_nb(vecs, members, np.int64(kernels.PRIME))
    b = kernels.affine_ranks_modp_np(vecs, members, kernels.PRIME)
    assert list(a) == list(b)
    for row, r in zip(members, a):
        chosen = [rows[i] for i in range(len(rows)) if row[i]]
        # small entries: the prime never divides a minor, so ranks agree
        assert r == affine_rank(chosen)


def test_fallback_flag_in_subprocess():
    import os
    import subprocess
    import sys

    code = "from plabic import kernels; print(kernels.USE_NUMBA)"
    env = dict(os.environ, PLABIC_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


def test_fallback_end_to_end():
    import os
    import subprocess
    import sys

    code = (
        "from plabic.fixtures import builtin\n"
        "from plabic.polytope import face_lattice\n"
        "from plabic.ehrhart import ehrhart\n"
        "g = builtin('g25').graph\n"
        "print(face_lattice(g).f_vector, ehrhart(g).hstar)"
    )
    env = dict(os.environ, PLABIC_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "(14, 59, 111, 106, 52, 12) (1, 7, 12, 4)"
