"""Compactifications of finite discrete spaces through sub-algebras of ``P(X)``,
and the symbolic finite/cofinite algebra on the non-negative integers.

A sub-algebra is a :class:`SetAlgebra` whose ground set is the discrete space
``X``; its ultrafilter space is the compactification, with ``x`` embedded as
the ultrafilter of members containing ``x``.
"""

import random
import re
from dataclasses import dataclass

import numpy as np

from .algebra import PowerSetAlgebra, SetAlgebra, is_isomorphism, validate_hom
from .errors import (
    DoesNotSeparate,
    InputError,
    IntersectionNotSingleton,
    PreconditionFailed,
    check,
)
from .filters import Filter, classify
from .topology import (
    ContinuousMap,
    TopSpace,
    check_axioms,
    closure,
    continuity_via_filters,
    image,
    is_continuous,
    stone_space,
)

# ---------------------------------------------------------------------------
# sub-algebras of P(X)


def inseparable_pair(A):
    """First pair of ground points that no member of ``A`` tells apart, else ``None``."""
    n = len(A.ground)
    members = A.members()
    for x in range(n):
        for y in range(x + 1, n):
            if not any(((m >> x) & 1) != ((m >> y) & 1) for m in members):
                return (A.ground[x], A.ground[y])
    return None


def separates_points(A):
    return inseparable_pair(A) is None


def principal_ultrafilter(A, x):
    """``{members containing x}`` as an ultrafilter of ``A`` (``x`` a ground index)."""
    m = np.array([(A.subset(i) >> x) & 1 for i in range(A.size)], dtype=bool)
    F = Filter(A, m)
    check(classify(F).ultra, "members containing a point do not form an ultrafilter")
    return F


@dataclass
class Embedding:
    """``x -> F_x`` from the ground set into the ultrafilter space of ``algebra``."""

    algebra: SetAlgebra
    space: TopSpace
    mapping: np.ndarray

    def image_mask(self):
        return image(self.mapping, (1 << len(self.mapping)) - 1)

    def pairs(self):
        return [(self.algebra.ground[x], self.space.points[int(p)]) for x, p in enumerate(self.mapping)]


def embedding_map(A):
    S = stone_space(A)
    return np.array([S.point_of(principal_ultrafilter(A, x)) for x in range(len(A.ground))], dtype=np.int64)


def compactify(A):
    """The ultrafilter space of a separating sub-algebra, with the verified embedding."""
    pair = inseparable_pair(A)
    if pair is not None:
        raise DoesNotSeparate(pair)
    S = stone_space(A)
    alpha = embedding_map(A)
    Y = S.space
    img = image(alpha, (1 << len(alpha)) - 1)
    check(np.unique(alpha).size == alpha.size, "embedding is not injective")
    check(Y.is_open(img), "image of the embedding is not open")
    check(all(Y.is_open(1 << int(p)) for p in alpha), "image of the embedding is not discrete")
    check(closure(img, Y) == Y.full, "image of the embedding is not dense")
    check(check_axioms(Y).stone, "compactification is not a Stone space")
    return Y, Embedding(A, Y, alpha)


def restriction_mask(G, small, big):
    """``G`` (ultrafilter of ``big``) intersected with ``small``, as a mask over ``small``."""
    return np.array([bool(G.mask[big.index_of(small.subset(i))]) for i in range(small.size)], dtype=bool)


@dataclass(frozen=True)
class Refusal:
    """No domination map: ``witness`` lies in the first algebra but not the second."""

    witness: str
    reverse_contained: bool

    def __str__(self):
        note = " (the containment holds the other way)" if self.reverse_contained else ""
        return f"{self.witness} is not a member of the larger algebra{note}"


def domination(BZ, BY):
    """``F -> F & BZ`` from ``U(BY)`` onto ``U(BZ)`` when ``BZ`` is contained in ``BY``.

    Returns a :class:`ContinuousMap`, or a :class:`Refusal` naming a member of
    ``BZ`` missing from ``BY``.
    """
    if [str(g) for g in BZ.ground] != [str(g) for g in BY.ground]:
        raise InputError("sub-algebras live on different ground sets")
    missing = [m for m in BZ.members() if not BY.contains(m)]
    if missing:
        reverse = all(BZ.contains(m) for m in BY.members())
        return Refusal(BZ.format_mask(missing[0]), reverse)
    SY, SZ = stone_space(BY), stone_space(BZ)
    pts = []
    for G in SY.ultrafilters:
        F = Filter(BZ, restriction_mask(G, BZ, BY))
        check(classify(F).ultra, "restricted ultrafilter is not an ultrafilter")
        pts.append(SZ.point_of(F))
    f = ContinuousMap(SY.space, SZ.space, pts)
    check(np.unique(f.mapping).size == SZ.space.npoints, "restriction map is not surjective")
    check(np.array_equal(f.mapping[embedding_map(BY)], embedding_map(BZ)), "restriction moves a principal point")
    return f


def compactification_from_space(Y, X):
    """``{A & X : A clopen in Y}`` for a dense, discrete point set ``X`` of a Stone space ``Y``.

    ``X`` is a point mask of ``Y``. The sub-algebra has ground set the points
    of ``X`` in order. Raises :class:`PreconditionFailed` unless ``X`` is dense
    and discrete and ``Y`` is a Stone space.
    """
    X = int(X)
    if X & ~Y.full:
        raise InputError("point set is not inside the space")
    if not check_axioms(Y).stone:
        raise PreconditionFailed("space is not a Stone space")
    if closure(X, Y) != Y.full:
        raise PreconditionFailed("point set is not dense")
    xs = [p for p in range(Y.npoints) if (X >> p) & 1]
    for p in xs:
        around = [u for u in Y.opens.tolist() if (u >> p) & 1]
        if not any(u & X == 1 << p for u in around):
            raise PreconditionFailed("subspace topology on the point set is not discrete")

    def trace(u):
        return sum(1 << k for k, p in enumerate(xs) if (u >> p) & 1)

    from .topology import clop

    C = clop(Y)
    A = SetAlgebra([Y.points[p] for p in xs], {trace(C.subset(i)) for i in range(C.size)})
    check(separates_points(A), "trace algebra does not separate points")
    h = validate_hom([A.index_of(trace(C.subset(i))) for i in range(C.size)], C, A)
    check(is_isomorphism(h), "restriction of clopens to the dense set is not injective")
    # y -> {A & X : y in A} realises Y as the ultrafilter space of the traces
    S = stone_space(A)
    psi = []
    for y in range(Y.npoints):
        m = np.zeros(A.size, dtype=bool)
        for i in range(C.size):
            if (C.subset(i) >> y) & 1:
                m[h.mapping[i]] = True
        psi.append(S.point_of(Filter(A, m)))
    f = ContinuousMap(Y, S.space, psi)
    check(f.is_homeomorphism(), "space is not homeomorphic to the ultrafilter space of the traces")
    return A


# ---------------------------------------------------------------------------
# Stone-Cech extension of a map out of a finite discrete space


def stone_cech_extend(f, K):
    """Extend ``f : X -> K`` (``X`` finite discrete, ``f`` a list of ``K``
    points) to the ultrafilter space of ``P(X)``.

    ``F`` is sent to the single point of the intersection of ``cl f(A)`` over
    ``A`` in ``F``. Asserts the extension property, the closure identity
    ``cl f~(U_A) = cl f(A)`` and continuity by filters and by open sets.
    """
    f = np.asarray(f, dtype=np.int64)
    if f.size == 0:
        raise InputError("map needs a nonempty domain")
    if f.min() < 0 or f.max() >= K.npoints:
        raise InputError("map must land in the points of K")
    ax = check_axioms(K)
    if not (ax.compact and ax.hausdorff):
        raise PreconditionFailed("target must be compact Hausdorff")
    B = PowerSetAlgebra(range(f.size))
    S = stone_space(B)
    cl_img = [closure(image(f, a), K) for a in range(B.size)]
    ext = []
    for F in S.ultrafilters:
        meet = K.full
        for a in F.members.tolist():
            meet &= cl_img[a]
        if meet == 0 or meet & (meet - 1):
            raise IntersectionNotSingleton(f"intersection for {F.format()} is {K.format_mask(meet)}")
        ext.append(meet.bit_length() - 1)
    alpha = np.array([S.point_of(_singleton_filter(B, x)) for x in range(f.size)])
    ext = np.asarray(ext, dtype=np.int64)
    check(np.array_equal(ext[alpha], f), "extension does not agree with f on X")
    for a in range(B.size):
        check(closure(image(ext, S.U(a)), K) == cl_img[a], "closure identity fails")
    check(continuity_via_filters(ext, S.space, K), "extension fails the filter continuity test")
    check(is_continuous(ext, S.space, K), "extension fails the open-preimage test")
    return ContinuousMap(S.space, K, ext)


def _singleton_filter(B, x):
    return Filter(B, B.order[1 << x].copy(), verify=False)


# ---------------------------------------------------------------------------
# the finite/cofinite algebra on the non-negative integers

_ELEMENT = re.compile(r"(fin|cofin)\{((?:0|[1-9][0-9]*)(?:,(?:0|[1-9][0-9]*))*)?\}")
_POINT = re.compile(r"principal\((0|[1-9][0-9]*)\)|(0|[1-9][0-9]*)|inf|infinity")


@dataclass(frozen=True)
class CofiniteElement:
    """A finite set of labels, or the complement of one."""

    cofinite: bool
    labels: frozenset

    @classmethod
    def fin(cls, labels=()):
        return cls(False, frozenset(int(v) for v in labels))

    @classmethod
    def cofin(cls, labels=()):
        return cls(True, frozenset(int(v) for v in labels))

    @classmethod
    def parse(cls, text):
        m = _ELEMENT.fullmatch(text)
        if not m:
            raise InputError(f"bad element {text!r}; expected fin{{a,b,...}} or cofin{{a,b,...}}")
        vals = [int(v) for v in m.group(2).split(",")] if m.group(2) else []
        if vals != sorted(set(vals)):
            raise InputError(f"labels must be strictly increasing in {text!r}")
        return cls(m.group(1) == "cofin", frozenset(vals))

    def __str__(self):
        tag = "cofin" if self.cofinite else "fin"
        return tag + "{" + ",".join(str(v) for v in sorted(self.labels)) + "}"

    def contains(self, n):
        return (n in self.labels) != self.cofinite

    def __or__(self, other):
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return CofiniteElement(False, a.labels | b.labels)
        if a.cofinite and b.cofinite:
            return CofiniteElement(True, a.labels & b.labels)
        fin, cof = (a, b) if b.cofinite else (b, a)
        return CofiniteElement(True, cof.labels - fin.labels)

    def __and__(self, other):
        return ~(~self | ~other)

    def __invert__(self):
        return CofiniteElement(not self.cofinite, self.labels)

    def __le__(self, other):
        return (self & other) == self


ZERO = CofiniteElement.fin()
ONE = CofiniteElement.cofin()


@dataclass(frozen=True)
class CofinitePoint:
    """``principal(n)`` (sets containing ``n``) or ``infinity`` (the cofinite sets)."""

    n: object = None  # None for infinity

    @property
    def is_infinity(self):
        return self.n is None

    @classmethod
    def parse(cls, text):
        m = _POINT.fullmatch(text)
        if not m:
            raise InputError(f"bad point {text!r}; expected a non-negative integer or 'infinity'")
        num = m.group(1) or m.group(2)
        return cls(None if num is None else int(num))

    def __str__(self):
        return "infinity" if self.is_infinity else f"principal({self.n})"


INFINITY = CofinitePoint()


def is_in(point, element):
    """Whether ``element`` belongs to the ultrafilter ``point``."""
    if point.is_infinity:
        return element.cofinite
    return element.contains(point.n)


@dataclass(frozen=True)
class PointSet:
    """A set of ultrafilters of the finite/cofinite algebra.

    ``cofinite`` false: the principal points at ``labels``. ``cofinite`` true:
    the principal points away from ``labels``, together with infinity.
    """

    cofinite: bool
    labels: frozenset

    def __contains__(self, point):
        if point.is_infinity:
            return self.cofinite
        return (point.n in self.labels) != self.cofinite

    def is_finite(self):
        return not self.cofinite

    def __str__(self):
        pts = ",".join(f"principal({v})" for v in sorted(self.labels))
        if self.cofinite:
            return "all principal points except {" + pts + "} and infinity"
        return "{" + pts + "}"


def basic_open(element):
    """``U_A``: the ultrafilters containing ``element``."""
    return PointSet(element.cofinite, element.labels)


def classify_ultrafilter(member, finite_witness=None):
    """Name the ultrafilter with membership test ``member``.

    If it holds a finite set, splitting that set into singletons finds the
    single one it contains, so it is principal. Otherwise every finite set is
    out, every cofinite set is in, and it is the point at infinity.
    """
    if finite_witness is not None:
        check(not finite_witness.cofinite and member(finite_witness), "witness must be a finite member")
        hits = [v for v in sorted(finite_witness.labels) if member(CofiniteElement.fin([v]))]
        check(len(hits) == 1, "an ultrafilter holds exactly one singleton of a finite member")
        return CofinitePoint(hits[0])
    return INFINITY


@dataclass(frozen=True)
class OnePointReport:
    principal: str
    non_principal: tuple
    procedure: str
    samples_checked: int

    @property
    def non_principal_count(self):
        return len(self.non_principal)


def random_element(rng, max_label=31, max_size=32):
    k = rng.randint(0, max_size)
    labels = rng.sample(range(max_label + 1), min(k, max_label + 1))
    return CofiniteElement(rng.random() < 0.5, frozenset(labels))


def one_point_ultrafilters(samples=200, seed=0):
    """The ultrafilter space of the finite/cofinite algebra, checked on random elements.

    The checks: each candidate point holds exactly one of ``A``, ``!A``; is
    closed under meets and upward; ``infinity`` holds no singleton (so it is
    not principal) and is the only candidate with that property.
    """
    rng = random.Random(seed)
    elems = [random_element(rng) for _ in range(samples)]
    candidates = [INFINITY] + [CofinitePoint(n) for n in range(34)]
    for p in candidates:
        for a in elems:
            check(is_in(p, a) != is_in(p, ~a), f"{p} is not an ultrafilter")
        for a, b in zip(elems, elems[1:]):
            if is_in(p, a) and is_in(p, b):
                check(is_in(p, a & b), f"{p} is not closed under meets")
            if is_in(p, a):
                check(is_in(p, a | b), f"{p} is not closed upward")
    non_principal = [p for p in candidates if not any(is_in(p, CofiniteElement.fin([n])) for n in range(34))]
    check(non_principal == [INFINITY], "expected exactly one non-principal ultrafilter")
    for n in range(34):
        p = CofinitePoint(n)
        check(classify_ultrafilter(lambda a, p=p: is_in(p, a), CofiniteElement.fin([n, n + 1])) == p,
              "classification misnames a principal ultrafilter")
    check(classify_ultrafilter(lambda a: is_in(INFINITY, a)) == INFINITY, "classification misnames infinity")
    return OnePointReport(
        "principal(n) for every n >= 0",
        tuple(str(p) for p in non_principal),
        "an ultrafilter holding a finite set holds one of its singletons and is principal; "
        "otherwise it holds every cofinite set and is the point at infinity",
        samples,
    )

