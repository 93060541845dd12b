"""Hot loops: exhaustive law scans, filter-family enumeration, open-set closure.

Every kernel has two implementations, a numba ``@njit`` one and a pure numpy
one. The numba path is used unless ``STONEDUALITY_PURE_NUMPY`` is set to a
truthy value or numba cannot be imported. Both paths return identical results
(including which witness is reported first), which the test-suite checks.
"""

import os

import numpy as np

_FLAG = os.environ.get("STONEDUALITY_PURE_NUMPY", "").strip().lower()
_WANT_NUMBA = _FLAG not in ("1", "true", "yes", "on")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _WANT_NUMBA

NO_WITNESS = (-1, -1, -1)


# ---------------------------------------------------------------------------
# associativity:  T[x, T[y, z]] == T[T[x, y], z]


def _assoc_violation_numpy(T):
    n = T.shape[0]
    y = np.arange(n)[:, None]
    z = np.arange(n)[None, :]
    Tyz = T[y, z]
    for x in range(n):
        bad = T[x][Tyz] != T[T[x, y], z]
        if bad.any():
            j, k = np.argwhere(bad)[0]
            return (x, int(j), int(k))
    return NO_WITNESS


def _assoc_violation_py(T):
    n = T.shape[0]
    for x in range(n):
        for y in range(n):
            txy = T[x, y]
            for z in range(n):
                if T[x, T[y, z]] != T[txy, z]:
                    return (x, y, z)
    return (-1, -1, -1)


# ---------------------------------------------------------------------------
# left distributivity of ``outer`` over ``inner``:
#   outer[x, inner[y, z]] == inner[outer[x, y], outer[x, z]]


def _distrib_violation_numpy(outer, inner):
    n = outer.shape[0]
    y = np.arange(n)[:, None]
    z = np.arange(n)[None, :]
    Iyz = inner[y, z]
    for x in range(n):
        ox = outer[x]
        bad = ox[Iyz] != inner[ox[y], ox[z]]
        if bad.any():
            j, k = np.argwhere(bad)[0]
            return (x, int(j), int(k))
    return NO_WITNESS


def _distrib_violation_py(outer, inner):
    n = outer.shape[0]
    for x in range(n):
        for y in range(n):
            oxy = outer[x, y]
            for z in range(n):
                if outer[x, inner[y, z]] != inner[oxy, outer[x, z]]:
                    return (x, y, z)
    return (-1, -1, -1)


# ---------------------------------------------------------------------------
# all nonempty families (bit-masks over an n-element carrier) that are upward
# closed for ``leq`` and closed under ``meet``


def _filter_families_numpy(leq, meet):
    n = leq.shape[0]
    fams = np.arange(1, 1 << n, dtype=np.int64)
    ok = np.ones(fams.shape[0], dtype=bool)
    bits = [((fams >> i) & 1).astype(bool) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and leq[i, j]:
                ok &= ~(bits[i] & ~bits[j])
    for i in range(n):
        for j in range(i + 1, n):
            k = meet[i, j]
            ok &= ~(bits[i] & bits[j] & ~bits[k])
    return fams[ok]


def _filter_families_py(leq, meet):
    n = leq.shape[0]
    total = 1 << n
    out = np.empty(total, dtype=np.int64)
    count = 0
    for fam in range(1, total):
        good = True
        for i in range(n):
            if not (fam >> i) & 1:
                continue
            for j in range(n):
                if leq[i, j] and not (fam >> j) & 1:
                    good = False
                    break
                if j > i and (fam >> j) & 1 and not (fam >> meet[i, j]) & 1:
                    good = False
                    break
            if not good:
                break
        if good:
            out[count] = fam
            count += 1
    return out[:count]


# ---------------------------------------------------------------------------
# all unions of members of ``basis`` (the empty union included), sorted


def _union_closure_numpy(basis, npoints):
    seen = np.zeros(1 << npoints, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    basis = np.asarray(basis, dtype=np.int64)
    while frontier.size:
        cand = np.unique((frontier[:, None] | basis[None, :]).ravel())
        cand = cand[~seen[cand]]
        seen[cand] = True
        frontier = cand
    return np.flatnonzero(seen).astype(np.int64)


def _union_closure_py(basis, npoints):
    seen = np.zeros(1 << npoints, dtype=np.bool_)
    seen[0] = True
    stack = np.empty(1 << npoints, dtype=np.int64)
    stack[0] = 0
    top = 1
    while top > 0:
        top -= 1
        u = stack[top]
        for b in basis:
            v = u | b
            if not seen[v]:
                seen[v] = True
                stack[top] = v
                top += 1
    return np.flatnonzero(seen).astype(np.int64)


# ---------------------------------------------------------------------------
# first pair of opens whose intersection or union is missing from the family;
# returns (i, j, kind) with kind 0 for intersection, 1 for union


def _topology_violation_numpy(opens, npoints):
    member = np.zeros(1 << npoints, dtype=bool)
    member[opens] = True
    for i in range(opens.shape[0]):
        inter = ~member[opens[i] & opens]
        union = ~member[opens[i] | opens]
        if inter.any() or union.any():
            ji = int(np.argmax(inter)) if inter.any() else opens.shape[0]
            ju = int(np.argmax(union)) if union.any() else opens.shape[0]
            if ji <= ju:
                return (i, ji, 0)
            return (i, ju, 1)
    return NO_WITNESS


def _topology_violation_py(opens, npoints):
    member = np.zeros(1 << npoints, dtype=np.bool_)
    for u in opens:
        member[u] = True
    m = opens.shape[0]
    for i in range(m):
        for j in range(m):
            if not member[opens[i] & opens[j]]:
                return (i, j, 0)
            if not member[opens[i] | opens[j]]:
                return (i, j, 1)
    return (-1, -1, -1)


if HAVE_NUMBA:
    _assoc_violation_numba = njit(cache=True)(_assoc_violation_py)
    _distrib_violation_numba = njit(cache=True)(_distrib_violation_py)
    _filter_families_numba = njit(cache=True)(_filter_families_py)
    _union_closure_numba = njit(cache=True)(_union_closure_py)
    _topology_violation_numba = njit(cache=True)(_topology_violation_py)
else:  # pragma: no cover
    _assoc_violation_numba = _assoc_violation_py
    _distrib_violation_numba = _distrib_violation_py
    _filter_families_numba = _filter_families_py
    _union_closure_numba = _union_closure_py
    _topology_violation_numba = _topology_violation_py

IMPLEMENTATIONS = {
    "numba": {
        "assoc_violation": _assoc_violation_numba,
        "distrib_violation": _distrib_violation_numba,
        "filter_families": _filter_families_numba,
        "union_closure": _union_closure_numba,
        "topology_violation": _topology_violation_numba,
    },
    "numpy": {
        "assoc_violation": _assoc_violation_numpy,
        "distrib_violation": _distrib_violation_numpy,
        "filter_families": _filter_families_numpy,
        "union_closure": _union_closure_numpy,
        "topology_violation": _topology_violation_numpy,
    },
}

BACKEND = "numba" if USE_NUMBA else "numpy"


def _tab(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def assoc_violation(T):
    """First ``(x, y, z)`` breaking associativity of table ``T``, else ``(-1, -1, -1)``."""
    x, y, z = IMPLEMENTATIONS[BACKEND]["assoc_violation"](_tab(T))
    return int(x), int(y), int(z)


def distrib_violation(outer, inner):
    """First ``(x, y, z)`` where ``outer`` fails to distribute over ``inner``."""
    x, y, z = IMPLEMENTATIONS[BACKEND]["distrib_violation"](_tab(outer), _tab(inner))
    return int(x), int(y), int(z)


def filter_families(leq, meet):
    """Bit-masks of every nonempty up-closed, meet-closed family on the carrier."""
    leq = np.ascontiguousarray(leq, dtype=np.bool_)
    return IMPLEMENTATIONS[BACKEND]["filter_families"](leq, _tab(meet))


def union_closure(basis, npoints):
    """Sorted array of all unions of ``basis`` masks over ``npoints`` points."""
    basis = np.unique(np.asarray(basis, dtype=np.int64))
    return IMPLEMENTATIONS[BACKEND]["union_closure"](basis, npoints)


def topology_violation(opens, npoints):
    opens = np.ascontiguousarray(opens, dtype=np.int64)
    i, j, kind = IMPLEMENTATIONS[BACKEND]["topology_violation"](opens, npoints)
    return int(i), int(j), int(kind)
