"""Boolean rings, their ideals, and the prime spectrum with the Zariski topology.

A ring built from an algebra shares the algebra's carrier and labels: the sum
is the symmetric difference ``x*!y + y*!x`` and the product is the meet.
"""

from dataclasses import dataclass

import numpy as np

from . import _accel
from .algebra import _first_pair, validate_algebra
from .duality import DualityCertificate
from .errors import InputError, NotAnIdeal, NotBooleanRing, SizeGuard, check
from .filters import _Subset
from .topology import ContinuousMap, TopSpace, check_axioms, preimages, stone_space


def ring_laws(A, Mu):
    """Scan the ring laws of ``(add, mul)`` plus idempotence; return ``(zero, one)``.

    Raises :class:`NotBooleanRing` naming the first failed law. The derived
    facts ``x + x = 0`` and ``xy = yx`` are then checked as consequences.
    """
    n = A.shape[0]
    xs = np.arange(n)
    w = _first_pair(A != A.T)
    if w:
        raise NotBooleanRing("add_commutativity", w)
    zeros = np.flatnonzero(np.all(A == xs[None, :], axis=1))
    if zeros.size == 0:
        raise NotBooleanRing("additive_identity", ())
    zero = int(zeros[0])
    bad = ~np.any(A == zero, axis=1)
    if bad.any():
        raise NotBooleanRing("additive_inverse", (int(np.argmax(bad)),))
    ones = np.flatnonzero(np.all(Mu == xs[None, :], axis=1) & np.all(Mu.T == xs[None, :], axis=1))
    if ones.size == 0:
        raise NotBooleanRing("multiplicative_identity", ())
    one = int(ones[0])
    bad = Mu[xs, xs] != xs
    if bad.any():
        raise NotBooleanRing("idempotence", (int(np.argmax(bad)),))
    for name, fn, args in (
        ("add_associativity", _accel.assoc_violation, (A,)),
        ("mul_associativity", _accel.assoc_violation, (Mu,)),
        ("left_distributivity", _accel.distrib_violation, (Mu, A)),
        ("right_distributivity", _accel.distrib_violation, (np.ascontiguousarray(Mu.T), A)),
    ):
        w = fn(*args)
        if w[0] >= 0:
            raise NotBooleanRing(name, w)
    # 2x = (2x)^2 = 4x, hence 2x = 0; then (x+y)^2 = x+y gives xy = yx
    check(np.all(A[xs, xs] == zero), "x + x = 0 failed in a ring with idempotent elements")
    check(np.array_equal(Mu, Mu.T), "multiplication not commutative in a Boolean ring")
    return zero, one


class BooleanRing:
    """A Boolean ring on ``size`` elements given by addition and multiplication tables."""

    def __init__(self, add, mul, labels, algebra=None):
        A = np.asarray(add, dtype=np.int64)
        Mu = np.asarray(mul, dtype=np.int64)
        n = A.shape[0]
        if A.shape != (n, n) or Mu.shape != (n, n) or n < 1:
            raise InputError("ring tables must be square and of equal size")
        if A.min() < 0 or A.max() >= n or Mu.min() < 0 or Mu.max() >= n:
            raise InputError("ring table entries must be element ids")
        self.zero, self.one = ring_laws(A, Mu)
        for t in (A, Mu):
            t.setflags(write=False)
        self.add_table = A
        self.mul_table = Mu
        self.size = n
        self._labels = list(labels)
        self.algebra = algebra

    def add(self, x, y):
        return self.add_table[x, y]

    def mul(self, x, y):
        return self.mul_table[x, y]

    def label(self, i):
        return self._labels[int(i)]

    def labels(self, indices):
        return [self._labels[int(i)] for i in indices]

    def parse_element(self, text):
        if self.algebra is not None:
            return self.algebra.parse_element(text)
        try:
            return self._labels.index(text.strip())
        except ValueError:
            raise InputError(f"unknown ring element {text!r}") from None

    def describe(self):
        return f"Boolean ring with {self.size} elements"

    def __repr__(self):
        return f"<BooleanRing: {self.size} elements>"


def to_ring(B):
    """The ring induced by ``B``: symmetric-difference sum, meet product."""
    cached = B.__dict__.get("_ring")
    if cached is not None:
        return cached
    J, M, C = B.tables
    MC = M[:, C]
    add = J[MC, MC.T]
    R = BooleanRing(add, M, B.labels(range(B.size)), algebra=B)
    check(R.zero == B.zero and R.one == B.one, "ring bounds differ from algebra bounds")
    B._ring = R
    return R


def to_algebra(R):
    """The algebra induced by ``R``: join ``x+y+xy``, meet ``xy``, complement ``1+x``."""
    A, Mu = R.add_table, R.mul_table
    xs = np.arange(R.size)
    bad = Mu[xs, xs] != xs
    if bad.any():
        raise NotBooleanRing("idempotence", (int(np.argmax(bad)),))
    join = A[A, Mu]
    comp = A[R.one]
    return validate_algebra(join, Mu, comp, R.labels(range(R.size)))


def ring_from_tables(add, mul, labels=None):
    """Validate a Boolean ring given in arbitrary element ids; returned in canonical order."""
    n = len(add)
    labels = [str(i) for i in range(n)] if labels is None else list(labels)
    raw = BooleanRing(add, mul, labels)
    return to_ring(to_algebra(raw))


# ---------------------------------------------------------------------------
# ideals


def ideal_violation(R, mask):
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return "empty"
    if not mask[R.add_table[idx[:, None], idx[None, :]]].all():
        return "not closed under addition"
    # R.I is contained in I; with 1 in R this is R.I = I
    if not mask[R.mul_table[:, idx]].all():
        return "does not absorb multiplication"
    return None


class RingIdeal(_Subset):
    kind = "ideal"

    def __init__(self, ring, mask, verify=True):
        super().__init__(ring, mask)
        if verify:
            why = ideal_violation(ring, self.mask)
            if why:
                raise NotAnIdeal(why)

    @property
    def ring(self):
        return self.algebra

    @classmethod
    def of(cls, R, elements):
        m = np.zeros(R.size, dtype=bool)
        m[[int(x) for x in elements]] = True
        return cls(R, m)


@dataclass(frozen=True)
class IdealClassification:
    proper: bool
    prime: bool
    maximal: bool


def ideal_generated(R, A):
    """Closure of ``A`` under ``r*a`` and pairwise sums, iterated to a fixpoint."""
    cur = np.zeros(R.size, dtype=bool)
    cur[R.zero] = True
    for a in A:
        cur[int(a)] = True
    while True:
        idx = np.flatnonzero(cur)
        nxt = cur.copy()
        nxt[R.mul_table[:, idx].ravel()] = True
        nxt[R.add_table[idx[:, None], idx[None, :]].ravel()] = True
        if np.array_equal(nxt, cur):
            break
        cur = nxt
    I = RingIdeal(R, cur)
    # in a Boolean ring the generated ideal is everything below x1 v ... v xn
    g = R.zero
    for a in np.flatnonzero(cur).tolist():
        g = int(R.add_table[R.add_table[g, a], R.mul_table[g, a]])
    below = R.mul_table[:, g] == np.arange(R.size)
    check(np.array_equal(below, cur), "generated ideal is not the principal ideal of the join")
    for a in A:
        check(cur[int(a)], "generated ideal misses a generator")
    return I


def _is_prime(I):
    R = I.ring
    m = I.mask
    bad = m[R.mul_table] & ~(m[:, None] | m[None, :])
    return not m[R.one] and not bad.any()


def _is_maximal(I):
    """Every ideal generated by ``I`` plus one outside element is the whole ring."""
    R = I.ring
    if I.mask[R.one]:
        return False
    members = np.flatnonzero(I.mask).tolist()
    for y in np.flatnonzero(~I.mask).tolist():
        if not ideal_generated(R, members + [y]).mask.all():
            return False
    return True


def classify_ideal(I):
    c = IdealClassification(not I.mask[I.ring.one], _is_prime(I), _is_maximal(I))
    if c.proper:
        check(c.prime == c.maximal, f"prime and maximal disagree on {I.format()}")
    return c


# ---------------------------------------------------------------------------
# the spectrum


class SpectrumSpace:
    """Prime ideals of ``ring``; ``basis[x]`` is the point mask of ``V_x``."""

    def __init__(self, ring, primes, space, basis):
        self.ring = ring
        self.primes = primes
        self.space = space
        self.basis = basis
        self._by_mask = {P.mask.tobytes(): p for p, P in enumerate(primes)}

    def point_of_mask(self, mask):
        key = np.asarray(mask, dtype=bool).tobytes()
        p = self._by_mask.get(key)
        check(p is not None, "set is not a prime ideal of this ring")
        return p

    def V(self, x):
        return int(self.basis[x])

    def listing(self):
        return [P.format() for P in self.primes]


def prime_ideals(R):
    """All prime ideals: the prime ones among the principal ideals."""
    xs = np.arange(R.size)
    out = []
    for x in range(R.size):
        below = R.mul_table[:, x] == xs
        I = RingIdeal(R, below, verify=False)
        if _is_prime(I):
            out.append((x, I))
    # descending generator, so the order matches the ultrafilters by atom
    out.sort(key=lambda t: -t[0])
    return [I for _, I in out]


def spectrum(R):
    cached = R.__dict__.get("_spectrum")
    if cached is not None:
        return cached
    primes = prime_ideals(R)
    n = len(primes)
    if n > 16:
        raise SizeGuard("spectrum points", n, 16)
    V = np.zeros(R.size, dtype=np.int64)
    for p, P in enumerate(primes):
        V |= (~P.mask).astype(np.int64) << p
    full = (1 << n) - 1
    A, Mu = R.add_table, R.mul_table
    check(V[R.one] == full and V[R.zero] == 0, "V_1 must be everything and V_0 empty")
    check(np.array_equal(V[Mu], V[:, None] & V[None, :]), "V_xy differs from V_x & V_y")
    check(np.array_equal(V[A[A, Mu]], V[:, None] | V[None, :]), "V_(x+y+xy) differs from V_x | V_y")
    check(np.array_equal(V[A[R.one]], full ^ V), "V_(1+x) is not the complement of V_x")
    V.setflags(write=False)
    space = TopSpace.from_basis([P.format() for P in primes], V)
    ax = check_axioms(space)
    check(ax.compact and ax.stone, "spectrum of a Boolean ring is not a Stone space")
    S = SpectrumSpace(R, primes, space, V)
    R._spectrum = S
    return S


def every_clopen_is_basic(S):
    basic = set(S.basis.tolist())
    return all(u in basic for u in S.space.clopens)


def spec_ultra_homeo(B):
    """``F -> B \\ F`` from the ultrafilter space onto the spectrum of the induced ring."""
    R = to_ring(B)
    Sp = spectrum(R)
    S = stone_space(B)
    mapping = [Sp.point_of_mask(~F.mask) for F in S.ultrafilters]
    f = ContinuousMap(S.space, Sp.space, mapping)
    checks = {
        "count_matches_atoms": len(Sp.primes) == len(S.ultrafilters) == B.natoms,
        "bijective": f.is_bijective(),
        "continuous": True,
        "inverse_continuous": f.is_homeomorphism(),
        "preimage_of_V_is_U": bool(np.array_equal(preimages(f.mapping, Sp.basis), S.basis)),
        "every_clopen_is_basic": every_clopen_is_basic(Sp),
    }
    return DualityCertificate(
        "algebra-side",
        "Spec(R_B) is homeomorphic to U(B)",
        B.describe(),
        f"{Sp.space.npoints}-point prime spectrum",
        f.pairs(),
        checks,
        witness=f,
    )
