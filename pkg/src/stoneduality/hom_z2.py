"""Maps from a Boolean algebra into the two-element algebra.

The function space ``2^B`` has one point per map ``B -> {0, 1}``; point ``p``
is the map ``a -> bit a of p``. Its topology is generated by the subbasis
sets ``0_a`` and ``1_a`` (maps sending ``a`` to 0, resp. 1). Point sets of the
function space are boolean arrays over its points.
"""

from functools import lru_cache

import numpy as np

from .algebra import BoolAlgebra
from .duality import DualityCertificate
from .errors import SizeGuard, check
from .filters import all_ultrafilters, hom_to_ultra, ultra_to_hom
from .topology import ContinuousMap, TopSpace, check_axioms, preimages, stone_space

# maps are handled as predicates up to this many base elements
PREDICATE_LIMIT = 16
# the open-set family of 2^B is built only up to this many base elements
MATERIALIZE_LIMIT = 4


class FunctionSpace:
    """``2^B`` for a base of ``n`` elements, in predicate form."""

    def __init__(self, base):
        if isinstance(base, BoolAlgebra):
            self.algebra = base
            n = base.size
        else:
            self.algebra = None
            n = int(base)
        if n > PREDICATE_LIMIT:
            raise SizeGuard("function space base", n, PREDICATE_LIMIT)
        self.n = n
        self.npoints = 1 << n
        pts = np.arange(self.npoints, dtype=np.int64)
        # values[p, a] = f_p(a)
        self.values = ((pts[:, None] >> np.arange(n)[None, :]) & 1).astype(bool)
        self.values.setflags(write=False)

    def one_set(self, a):
        return self.values[:, a]

    def zero_set(self, a):
        return ~self.values[:, a]

    def subbasis(self):
        """Pairs ``(0_a, 1_a)`` for every base element ``a``, as point masks."""
        return [(self.zero_set(a), self.one_set(a)) for a in range(self.n)]

    def space(self):
        """The space with its full family of open sets (small bases only)."""
        if self.n > MATERIALIZE_LIMIT:
            raise SizeGuard("materialised function space base", self.n, MATERIALIZE_LIMIT)
        return _materialised(self.n)


@lru_cache(maxsize=None)
def _materialised(n):
    # depends only on the base size, and TopSpace is immutable
    W = FunctionSpace(n)
    sub = []
    for z, o in W.subbasis():
        sub += [_to_int(z), _to_int(o)]
    X = TopSpace.from_subbasis(W.npoints, sub)
    check(check_axioms(X).stone, "2^B is not a Stone space")
    return X


def _to_int(mask):
    return int(sum(1 << int(p) for p in np.flatnonzero(mask)))


def function_space(B):
    return FunctionSpace(B)


def _law_filter(B, values):
    """Which rows of ``values`` (maps as 0/1 rows over the carrier) are homomorphisms."""
    J, M, C = B.tables
    idx = np.flatnonzero(~values[:, B.zero] & values[:, B.one])
    # prune the candidates one law instance at a time
    for a in range(B.size):
        for b in range(B.size):
            if idx.size == 0:
                break
            fa, fb = values[idx, a], values[idx, b]
            keep = (values[idx, J[a, b]] == (fa | fb)) & (values[idx, M[a, b]] == (fa & fb))
            idx = idx[keep]
    ok = np.zeros(values.shape[0], dtype=bool)
    ok[idx] = True
    return ok


def homs_bruteforce(B):
    """Homomorphism masks over the carrier, by testing the laws on every map."""
    if B.size > PREDICATE_LIMIT:
        raise SizeGuard("brute-force map scan", B.size, PREDICATE_LIMIT)
    W = FunctionSpace(B)
    ok = _law_filter(B, W.values)
    return np.flatnonzero(ok)


def all_homs(B):
    """Every homomorphism ``B -> Z2`` once, in the order of the matching ultrafilters."""
    homs = [ultra_to_hom(F) for F in all_ultrafilters(B)]
    if B.size <= PREDICATE_LIMIT:
        got = sorted(int((h.mapping << np.arange(B.size)).sum()) for h in homs)
        check(got == homs_bruteforce(B).tolist(), "ultrafilter homomorphisms differ from the law scan")
    return homs


def hom_listing(h):
    """Sorted labels of the elements sent to 1."""
    return hom_to_ultra(h).format()


def constraint_sets(B):
    """``(A_0, A_1, A_join, A_meet)`` inside ``2^B``, each built as a union of
    intersections of subbasis sets. ``A_join``/``A_meet`` are indexed ``[a, b]``."""
    W = FunctionSpace(B)
    J, M, C = B.tables
    z, o = W.zero_set, W.one_set
    n = B.size
    A0 = z(B.zero)
    A1 = o(B.one)
    Ajoin = np.empty((n, n, W.npoints), dtype=bool)
    Ameet = np.empty((n, n, W.npoints), dtype=bool)
    for a in range(n):
        for b in range(n):
            s, p = J[a, b], M[a, b]
            Ajoin[a, b] = (
                (z(s) & z(a) & z(b)) | (o(s) & o(a) & z(b)) | (o(s) & z(a) & o(b)) | (o(s) & o(a) & o(b))
            )
            Ameet[a, b] = (
                (z(p) & z(a) & z(b)) | (z(p) & o(a) & z(b)) | (z(p) & z(a) & o(b)) | (o(p) & o(a) & o(b))
            )
    return W, A0, A1, Ajoin, Ameet


def _complement_is_union_of_cylinders(W, A, elems, allowed):
    """The complement of ``A`` equals the union of the cylinders over the
    disallowed value patterns of ``elems``, so ``A`` is closed."""
    rest = np.zeros(W.npoints, dtype=bool)
    for pattern in range(1 << len(elems)):
        vals = tuple((pattern >> k) & 1 for k in range(len(elems)))
        if vals in allowed:
            continue
        cyl = np.ones(W.npoints, dtype=bool)
        for e, v in zip(elems, vals):
            cyl &= W.one_set(e) if v else W.zero_set(e)
        rest |= cyl
    return bool(np.array_equal(rest, ~A))


_JOIN_OK = {(0, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)}
_MEET_OK = {(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)}


def hom_closedness_check(B):
    """Hom(B, Z2) as the intersection of the constraint sets, and closed in ``2^B``."""
    W, A0, A1, Ajoin, Ameet = constraint_sets(B)
    hom = A0 & A1 & Ajoin.all(axis=(0, 1)) & Ameet.all(axis=(0, 1))
    direct = _law_filter(B, W.values)
    if not np.array_equal(hom, direct):
        return False
    via_ultra = np.zeros(W.npoints, dtype=bool)
    for h in all_homs(B):
        via_ultra[int((h.mapping << np.arange(B.size)).sum())] = True
    if not np.array_equal(hom, via_ultra):
        return False
    if B.size <= MATERIALIZE_LIMIT:
        X = W.space()
        return X.is_closed(_to_int(hom))
    J, M, C = B.tables
    n = B.size
    ok = _complement_is_union_of_cylinders(W, A0, [B.zero], {(0,)})
    ok = ok and _complement_is_union_of_cylinders(W, A1, [B.one], {(1,)})
    for a in range(n):
        for b in range(n):
            if not ok:
                return False
            ok = _complement_is_union_of_cylinders(W, Ajoin[a, b], [J[a, b], a, b], _JOIN_OK)
            ok = ok and _complement_is_union_of_cylinders(W, Ameet[a, b], [M[a, b], a, b], _MEET_OK)
    return ok


class HomSpace:
    """Hom(B, Z2) with the topology it inherits from ``2^B``."""

    def __init__(self, B):
        self.algebra = B
        self.homs = all_homs(B)
        k = len(self.homs)
        vals = np.array([h.mapping for h in self.homs], dtype=np.int64).reshape(k, B.size)
        # traces of 1_a and 0_a on Hom, as masks over the homomorphisms
        weights = np.int64(1) << np.arange(k, dtype=np.int64)
        self.one_trace = (vals * weights[:, None]).sum(axis=0)
        self.zero_trace = ((1 - vals) * weights[:, None]).sum(axis=0)
        labels = [hom_listing(h) for h in self.homs]
        self.space = TopSpace.from_subbasis(labels, list(self.one_trace) + list(self.zero_trace))
        if B.size <= MATERIALIZE_LIMIT:
            # traces of every open set of the materialised ambient space
            W = FunctionSpace(B)
            X = W.space()
            where = np.array([int((h.mapping << np.arange(B.size)).sum()) for h in self.homs])
            traces = np.unique(preimages(where, X.opens))
            check(np.array_equal(traces, self.space.opens), "subspace topology differs from the subbasis traces")


def hom_space(B):
    cached = B.__dict__.get("_hom_space")
    if cached is None:
        cached = HomSpace(B)
        B._hom_space = cached
    return cached


def hom_ultra_homeo(B):
    """``f -> f^-1(1)`` from Hom(B, Z2) onto the ultrafilter space."""
    H = hom_space(B)
    S = stone_space(B)
    mapping = [S.point_of(hom_to_ultra(h)) for h in H.homs]
    f = ContinuousMap(H.space, S.space, mapping)
    transported = np.unique(preimages(f.mapping, S.space.opens))
    checks = {
        "count_matches_atoms": len(H.homs) == len(S.ultrafilters) == B.natoms,
        "bijective": f.is_bijective(),
        "continuous": True,
        "inverse_continuous": f.is_homeomorphism(),
        "subspace_equals_transported": bool(np.array_equal(transported, H.space.opens)),
        "one_trace_is_U": bool(np.array_equal(preimages(f.mapping, S.basis), H.one_trace)),
    }
    return DualityCertificate(
        "algebra-side",
        "Hom(B,Z2) is homeomorphic to U(B)",
        B.describe(),
        f"{S.space.npoints}-point ultrafilter space",
        f.pairs(),
        checks,
        witness=f,
    )


def hom_spec_homeo(B):
    """``f -> f^-1(0)`` from Hom(B, Z2) onto the prime spectrum of the induced ring."""
    from .ring import spectrum, to_ring

    H = hom_space(B)
    R = to_ring(B)
    Sp = spectrum(R)
    mapping = [Sp.point_of_mask(np.asarray(h.mapping) == 0) for h in H.homs]
    f = ContinuousMap(H.space, Sp.space, mapping)
    checks = {
        "bijective": f.is_bijective(),
        "continuous": True,
        "inverse_continuous": f.is_homeomorphism(),
        "preimage_of_V_is_one_trace": bool(
            np.array_equal(preimages(f.mapping, Sp.basis), H.one_trace)
        ),
    }
    return DualityCertificate(
        "algebra-side",
        "Hom(B,Z2) is homeomorphic to Spec(R_B)",
        B.describe(),
        f"{Sp.space.npoints}-point prime spectrum",
        f.pairs(),
        checks,
        witness=f,
    )

