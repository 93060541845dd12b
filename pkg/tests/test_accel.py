import os
import subprocess
import sys

import numpy as np
import pytest

from stoneduality import _accel
from stoneduality.algebra import PowerSetAlgebra

NUMBA = _accel.IMPLEMENTATIONS["numba"]
NUMPY = _accel.IMPLEMENTATIONS["numpy"]


def tables(seed, count=40):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, 9))
        out.append(rng.integers(0, n, size=(n, n)).astype(np.int64))
    for k in range(1, 4):
        J, M, _ = PowerSetAlgebra(range(k)).tables
        out += [np.ascontiguousarray(J, dtype=np.int64), np.ascontiguousarray(M, dtype=np.int64)]
    return out


def test_assoc_paths_agree():
    for T in tables(0):
        assert tuple(NUMBA["assoc_violation"](T)) == tuple(NUMPY["assoc_violation"](T))


def test_distrib_paths_agree():
    ts = tables(1)
    for A, B in zip(ts, ts[1:]):
        if A.shape != B.shape:
            continue
        assert tuple(NUMBA["distrib_violation"](A, B)) == tuple(NUMPY["distrib_violation"](A, B))
    J, M, _ = PowerSetAlgebra(range(3)).tables
    J, M = (np.ascontiguousarray(t, dtype=np.int64) for t in (J, M))
    assert tuple(NUMBA["distrib_violation"](M, J)) == (-1, -1, -1)


def test_filter_family_paths_agree():
    for k in range(1, 4):
        B = PowerSetAlgebra(range(k))
        leq = np.ascontiguousarray(B.order, dtype=np.bool_)
        meet = np.ascontiguousarray(B.tables[1], dtype=np.int64)
        a = NUMBA["filter_families"](leq, meet)
        b = NUMPY["filter_families"](leq, meet)
        assert a.tolist() == b.tolist()
        assert len(a) == 1 << k  # one principal filter per element


def test_union_closure_paths_agree():
    rng = np.random.default_rng(2)
    for _ in range(30):
        n = int(rng.integers(1, 8))
        basis = np.unique(rng.integers(0, 1 << n, size=int(rng.integers(1, 6))).astype(np.int64))
        assert NUMBA["union_closure"](basis, n).tolist() == NUMPY["union_closure"](basis, n).tolist()


def test_topology_violation_paths_agree():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        opens = np.unique(rng.integers(0, 1 << n, size=int(rng.integers(1, 8))).astype(np.int64))
        assert tuple(NUMBA["topology_violation"](opens, n)) == tuple(NUMPY["topology_violation"](opens, n))


def test_backend_flag_selects_numpy():
    env = dict(os.environ, STONEDUALITY_PURE_NUMPY="1")
    code = (
        "from stoneduality import _accel; from stoneduality.algebra import PowerSetAlgebra;"
        "from stoneduality.duality import dual_check;"
        "assert _accel.BACKEND == 'numpy'; dual_check(PowerSetAlgebra(range(3))); print('ok')"
    )
    r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert r.stdout.strip() == "ok"


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba unavailable")
def test_default_backend_is_numba():
    if os.environ.get("STONEDUALITY_PURE_NUMPY"):
        pytest.skip("numpy path forced by the environment")
    assert _accel.BACKEND == "numba"
