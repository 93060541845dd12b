"""Finite topological spaces and the ultrafilter space of a Boolean algebra.

Point sets are int bit-masks over ``range(npoints)``; a space stores its whole
family of open sets. Every finite Hausdorff space is discrete, so the Stone
spaces produced here are discrete; the checks still run the generic
algorithms, and non-Hausdorff inputs exercise the negative paths.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _accel
from .algebra import PowerSetAlgebra, SetAlgebra, bits_of, format_set
from .errors import (
    InputError,
    NotAFilter,
    NotATopology,
    NotContinuous,
    PreconditionFailed,
    SizeGuard,
    check,
)
from .filters import Filter, all_filters, all_ultrafilters, classify

MAX_POINTS = 20
MAX_OPENS = 1 << 16
# points allowed when filters on the power set of the points are needed
FILTER_POINTS = 12


def mask_of(points):
    m = 0
    for p in points:
        m |= 1 << p
    return m


class TopSpace:
    """A finite space given by its complete family of open sets."""

    def __init__(self, points, opens, validate=True):
        if isinstance(points, int):
            points = list(range(points))
        self.points = list(points)
        n = len(self.points)
        if n > MAX_POINTS:
            raise SizeGuard("points", n, MAX_POINTS)
        self.npoints = n
        self.full = (1 << n) - 1
        arr = np.unique(np.asarray(list(opens), dtype=np.int64))
        if arr.size > MAX_OPENS:
            raise SizeGuard("open sets", int(arr.size), MAX_OPENS)
        if arr.size and (arr.min() < 0 or arr.max() > self.full):
            raise InputError("open set mentions a point outside the space")
        self.opens = arr
        self.opens.setflags(write=False)
        self._open_set = set(arr.tolist())
        if validate:
            self._validate()

    def _validate(self):
        if 0 not in self._open_set:
            raise NotATopology("empty set is not open")
        if self.full not in self._open_set:
            raise NotATopology("whole space is not open")
        if self.opens.size > 4096:
            raise SizeGuard("explicit topology check", int(self.opens.size), 4096)
        i, j, kind = _accel.topology_violation(self.opens, self.npoints)
        if i >= 0:
            op = "intersection" if kind == 0 else "union"
            a, b = self.format_mask(self.opens[i]), self.format_mask(self.opens[j])
            raise NotATopology(f"{op} of {a} and {b} is not open")

    @classmethod
    def from_basis(cls, points, basis):
        """Topology generated by ``basis`` (checked to be a basis)."""
        if isinstance(points, int):
            points = list(range(points))
        n = len(points)
        if n > MAX_POINTS:
            raise SizeGuard("points", n, MAX_POINTS)
        full = (1 << n) - 1
        b = np.unique(np.asarray(list(basis), dtype=np.int64))
        cover = int(np.bitwise_or.reduce(b)) if b.size else 0
        if cover != full:
            raise NotATopology("basis does not cover the space")
        inter = np.unique((b[:, None] & b[None, :]).ravel())
        for u in inter.tolist():
            inside = b[(b & ~u) == 0]
            got = int(np.bitwise_or.reduce(inside)) if inside.size else 0
            if got != u:
                raise NotATopology("intersection of basis sets is not a union of basis sets")
        opens = _accel.union_closure(b, n)
        if opens.size > MAX_OPENS:
            raise SizeGuard("open sets", int(opens.size), MAX_OPENS)
        return cls(points, opens, validate=False)

    @classmethod
    def from_subbasis(cls, points, subbasis):
        """Topology generated by ``subbasis`` via finite intersections."""
        if isinstance(points, int):
            points = list(range(points))
        full = (1 << len(points)) - 1
        fam = np.unique(np.asarray(list(subbasis) + [full], dtype=np.int64))
        while True:
            new = np.unique(np.concatenate([fam, (fam[:, None] & fam[None, :]).ravel()]))
            if new.size == fam.size:
                break
            fam = new
        return cls.from_basis(points, fam)

    @classmethod
    def discrete(cls, points):
        if isinstance(points, int):
            points = list(range(points))
        return cls.from_basis(points, [1 << i for i in range(len(points))])

    @classmethod
    def indiscrete(cls, points):
        if isinstance(points, int):
            points = list(range(points))
        return cls(points, [0, (1 << len(points)) - 1])

    # ------------------------------------------------------------------

    def __repr__(self):
        return f"<TopSpace: {self.npoints} points, {self.opens.size} open sets>"

    def __eq__(self, other):
        return (
            isinstance(other, TopSpace)
            and other.npoints == self.npoints
            and np.array_equal(other.opens, self.opens)
        )

    __hash__ = None

    def format_mask(self, mask):
        return format_set(self.points[p] for p in bits_of(int(mask)))

    def is_open(self, mask):
        return int(mask) in self._open_set

    def is_closed(self, mask):
        return (self.full ^ int(mask)) in self._open_set

    def is_clopen(self, mask):
        return self.is_open(mask) and self.is_closed(mask)

    @cached_property
    def clopens(self):
        comp = self.full ^ self.opens
        keep = np.isin(comp, self.opens)
        return [int(u) for u in self.opens[keep]]

    @cached_property
    def min_opens(self):
        """For each point, the intersection of all open sets containing it."""
        out = []
        for p in range(self.npoints):
            containing = self.opens[(self.opens >> p) & 1 == 1]
            out.append(int(np.bitwise_and.reduce(containing)))
        return out

    def interior(self, mask):
        inside = self.opens[(self.opens & ~int(mask)) == 0]
        return int(np.bitwise_or.reduce(inside)) if inside.size else 0

    @cached_property
    def powerset(self):
        """``P(points)`` as an algebra, for filters of subsets of the space."""
        if self.npoints > FILTER_POINTS:
            raise SizeGuard("points for filter computations", self.npoints, FILTER_POINTS)
        return PowerSetAlgebra(self.points)

    def listing(self):
        """The space in the line format accepted by the space-file reader."""
        lines = [f"space {self.npoints}"]
        for u in self.opens.tolist():
            lines.append(" ".join(str(p) for p in bits_of(u)) if u else "{}")
        return lines


def closure(S, X):
    """Smallest closed superset of the point set ``S``."""
    S = int(S)
    return X.full ^ X.interior(X.full ^ S)


# ---------------------------------------------------------------------------
# connectedness and separation


def components(X):
    """Connected components as point masks, ordered by least point.

    Two points are linked when one lies in every open set around the other;
    components are the classes of the generated equivalence.
    """
    mins = X.min_opens
    seen = 0
    comps = []
    for start in range(X.npoints):
        if (seen >> start) & 1:
            continue
        comp = 1 << start
        stack = [start]
        while stack:
            p = stack.pop()
            for q in range(X.npoints):
                if (comp >> q) & 1:
                    continue
                if (mins[p] >> q) & 1 or (mins[q] >> p) & 1:
                    comp |= 1 << q
                    stack.append(q)
        seen |= comp
        comps.append(comp)
    return comps


def component_of(x, X):
    for c in components(X):
        if (c >> x) & 1:
            return c
    raise InputError(f"no point {x}")


def _has_finite_subcover(cover, full):
    """Drop redundant members of a finite cover one at a time; check it still covers.

    A member is redundant when each of its points is covered at least twice
    by the members still kept.
    """
    cover = [int(u) for u in cover]
    npts = full.bit_length()
    count = [0] * npts
    for u in cover:
        for p in bits_of(u):
            count[p] += 1
    if any(c == 0 for c in count):
        return False
    for u in cover:
        pts = bits_of(u)
        if all(count[p] >= 2 for p in pts):
            for p in pts:
                count[p] -= 1
    return all(c > 0 for c in count)


@dataclass(frozen=True)
class SpaceAxioms:
    """Separation and compactness flags of a finite space.

    Local compactness is omitted: every finite space is locally compact.
    """

    t1: bool
    hausdorff: bool
    compact: bool
    zero_dimensional: bool
    totally_disconnected: bool
    stone: bool


def check_axioms(X):
    n = X.npoints
    mins = X.min_opens
    t1 = all(not (mins[x] >> y) & 1 for x in range(n) for y in range(n) if x != y)
    hausdorff = all(mins[x] & mins[y] == 0 for x in range(n) for y in range(x + 1, n))
    # every open cover of a finite space is finite; reduce the two extreme covers
    compact = _has_finite_subcover(X.opens.tolist(), X.full) and _has_finite_subcover(mins, X.full)
    check(compact, "finite space failed the open cover reduction")
    clop = np.asarray(X.clopens, dtype=np.int64)
    zero_dim = all(bool((((clop >> x) & 1 == 1) & ((clop & ~mins[x]) == 0)).any()) for x in range(n))
    comps = components(X)
    totally = all(c & (c - 1) == 0 for c in comps)
    return SpaceAxioms(t1, hausdorff, compact, zero_dim, totally, hausdorff and compact and totally)


def component_clopen_identity(X):
    """Each component equals the intersection of the clopen sets around its points."""
    ax = check_axioms(X)
    if not (ax.compact and ax.hausdorff):
        raise PreconditionFailed("space must be compact Hausdorff")
    clop = np.asarray(X.clopens, dtype=np.int64)
    for x in range(X.npoints):
        around = clop[(clop >> x) & 1 == 1]
        if int(np.bitwise_and.reduce(around)) != component_of(x, X):
            return False
    return True


# ---------------------------------------------------------------------------
# maps


def image(f, mask):
    out = 0
    for p in bits_of(int(mask)):
        out |= 1 << int(f[p])
    return out


def preimages(f, masks):
    """Preimage of each mask in ``masks`` under the point map ``f`` (vectorised)."""
    f = np.asarray(f, dtype=np.int64)
    masks = np.asarray(masks, dtype=np.int64)
    bits = (masks[:, None] >> f[None, :]) & 1
    return (bits << np.arange(f.size, dtype=np.int64)[None, :]).sum(axis=1)


def is_continuous(f, X, Y):
    pre = preimages(f, Y.opens)
    return bool(np.isin(pre, X.opens).all())


class ContinuousMap:
    """A point map ``source -> target`` with open preimages."""

    def __init__(self, source, target, mapping, verify=True):
        self.source = source
        self.target = target
        self.mapping = np.asarray(mapping, dtype=np.int64)
        if self.mapping.shape != (source.npoints,) or (
            self.mapping.size and (self.mapping.min() < 0 or self.mapping.max() >= target.npoints)
        ):
            raise InputError("map must send every source point to a target point")
        self.mapping.setflags(write=False)
        if verify:
            pre = preimages(self.mapping, target.opens)
            bad = ~np.isin(pre, source.opens)
            if bad.any():
                raise NotContinuous(target.format_mask(target.opens[int(np.argmax(bad))]))

    def __call__(self, p):
        return int(self.mapping[p])

    def __eq__(self, other):
        return (
            isinstance(other, ContinuousMap)
            and other.source == self.source
            and other.target == self.target
            and np.array_equal(other.mapping, self.mapping)
        )

    __hash__ = None

    def compose(self, inner):
        """``self o inner``."""
        return ContinuousMap(inner.source, self.target, self.mapping[inner.mapping])

    def is_bijective(self):
        return self.source.npoints == self.target.npoints and np.unique(self.mapping).size == self.source.npoints

    def is_homeomorphism(self):
        if not self.is_bijective():
            return False
        images = [image(self.mapping, u) for u in self.source.opens.tolist()]
        return all(self.target.is_open(v) for v in images)

    def inverse(self):
        check(self.is_bijective(), "map is not invertible")
        inv = np.empty_like(self.mapping)
        inv[self.mapping] = np.arange(self.mapping.size)
        return ContinuousMap(self.target, self.source, inv)

    def pairs(self):
        return [(self.source.points[p], self.target.points[int(q)]) for p, q in enumerate(self.mapping)]


def identity_map(X):
    return ContinuousMap(X, X, np.arange(X.npoints))


def find_homeomorphism(X, Y, max_points=8):
    """Point-permutation search for a homeomorphism ``X -> Y``; ``None`` if none."""
    from itertools import permutations

    if X.npoints != Y.npoints or X.opens.size != Y.opens.size:
        return None
    if X.npoints > max_points:
        raise SizeGuard("point permutation search", X.npoints, max_points)
    for perm in permutations(range(Y.npoints)):
        if is_continuous(perm, X, Y):
            h = ContinuousMap(X, Y, perm, verify=False)
            if h.is_homeomorphism():
                return h
    return None


# ---------------------------------------------------------------------------
# filters of subsets: convergence and push-forward


def neighborhoods_mask(x, X):
    """Mask over ``X.powerset`` of the neighbourhoods of ``x``: sets containing an open set around ``x``."""
    P = X.powerset
    subsets = np.arange(P.size, dtype=np.int64)
    around = X.opens[(X.opens >> x) & 1 == 1]
    hit = np.zeros(P.size, dtype=bool)
    for u in around.tolist():
        hit |= (subsets & u) == u
    return hit


def neighborhood_filter(x, X):
    return Filter(X.powerset, neighborhoods_mask(x, X))


def converges(F, x, X):
    """``F`` (a filter of subsets of the points) converges to ``x``."""
    if F.algebra is not X.powerset:
        raise NotAFilter("filter must live on the power set of the space's points")
    nbhd = neighborhoods_mask(x, X)
    members = F.members
    # every neighbourhood contains a member of F
    direct = all(bool(((members & ~N) == 0).any()) for N in np.flatnonzero(nbhd).tolist())
    via_filter = bool(np.all(~nbhd | F.mask))
    check(direct == via_filter, "the two convergence criteria disagree")
    return direct


def pushforward(f, F, Y):
    """``{f(A) : A in F}`` saturated upward, as a filter on ``Y``'s points."""
    Q = Y.powerset
    imgs = [image(f, A) for A in F.members.tolist()]
    m = np.zeros(Q.size, dtype=bool)
    m[imgs] = True
    m = Q.order[np.flatnonzero(m)].any(axis=0)
    G = Filter(Q, m)
    if classify(F).ultra:
        check(classify(G).ultra, "push-forward of an ultrafilter is not an ultrafilter")
    return G


def continuity_via_filters(f, X, Y):
    """Continuity as: every filter converging to ``x`` is pushed to one converging to ``f(x)``.

    Cross-checked against the open-preimage definition.
    """
    f = np.asarray(f, dtype=np.int64)
    filters = all_filters(X.powerset)
    ok = True
    for x in range(X.npoints):
        for F in filters:
            if converges(F, x, X) and not converges(pushforward(f, F, Y), int(f[x]), Y):
                ok = False
                break
        if not ok:
            break
    check(ok == is_continuous(f, X, Y), "filter continuity disagrees with open preimages")
    return ok


# ---------------------------------------------------------------------------
# the ultrafilter space of an algebra


class StoneSpace:
    """Ultrafilters of ``algebra`` with the topology generated by the sets ``U_x``.

    ``basis[x]`` is the point mask of ``U_x = {F : x in F}``.
    """

    def __init__(self, algebra, ultrafilters, space, basis):
        self.algebra = algebra
        self.ultrafilters = ultrafilters
        self.space = space
        self.basis = basis
        self._by_generator = {F.generator: p for p, F in enumerate(ultrafilters)}

    def point_of(self, F):
        """Point index of an ultrafilter of ``algebra``."""
        p = self._by_generator.get(F.generator)
        check(p is not None and self.ultrafilters[p] == F, "not an ultrafilter of this algebra")
        return p

    def U(self, x):
        return int(self.basis[x])

    def __repr__(self):
        return f"<StoneSpace of {self.algebra.describe()}: {self.space.npoints} points>"


def stone_space(B):
    cached = B.__dict__.get("_stone_space")
    if cached is not None:
        return cached
    if B.natoms > 16:
        raise SizeGuard("ultrafilter space points", B.natoms, 16)
    ultras = all_ultrafilters(B)
    n = len(ultras)
    U = np.zeros(B.size, dtype=np.int64)
    for p, F in enumerate(ultras):
        U |= F.mask.astype(np.int64) << p
    full = (1 << n) - 1
    J, M, C = B.tables
    check(U[B.zero] == 0 and U[B.one] == full, "U_0 must be empty and U_1 everything")
    check(np.array_equal(U[M], U[:, None] & U[None, :]), "U_(x.y) differs from U_x & U_y")
    check(np.array_equal(U[J], U[:, None] | U[None, :]), "U_(x+y) differs from U_x | U_y")
    check(np.array_equal(U[C], full ^ U), "U_(!x) is not the complement of U_x")
    labels = [f"F({B.label(F.generator)})" for F in ultras]
    space = TopSpace.from_basis(labels, U)
    U.setflags(write=False)
    S = StoneSpace(B, ultras, space, U)
    B._stone_space = S
    return S


def clop(X):
    """The algebra of clopen subsets of ``X``."""
    cached = X.__dict__.get("_clop")
    if cached is None:
        cached = SetAlgebra(X.points, X.clopens)
        cached.check_axioms()
        X._clop = cached
    return cached
