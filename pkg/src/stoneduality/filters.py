"""Filters and ideals of finite Boolean algebras.

Filters and ideals are stored extensionally as boolean masks over the carrier.
Classification flags are computed from their own definitions and the
equivalences between them are checked, never assumed.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import _accel
from .algebra import Element, two_element_algebra, validate_hom
from .errors import (
    AvoidInFilter,
    EmptySet,
    MixedAlgebras,
    NoFPP,
    NotAFilter,
    NotAnIdeal,
    NotProper,
    NotUltra,
    SizeGuard,
    check,
)

# carrier size for the brute-force scan over all families of elements
FAMILY_SCAN_LIMIT = 16


def _index(B, x):
    if isinstance(x, Element):
        if x.algebra is not B:
            raise MixedAlgebras()
        return x.index
    return int(x)


def _indices(B, xs):
    return [_index(B, x) for x in xs]


def _mask(B, idx):
    m = np.zeros(B.size, dtype=bool)
    m[list(idx)] = True
    return m


class _Subset:
    kind = "subset"

    def __init__(self, algebra, mask):
        self.algebra = algebra
        self.mask = np.asarray(mask, dtype=bool)
        self.mask.setflags(write=False)

    @property
    def members(self):
        return np.flatnonzero(self.mask)

    def __len__(self):
        return int(self.mask.sum())

    def __contains__(self, x):
        return bool(self.mask[_index(self.algebra, x)])

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other.algebra is self.algebra
            and np.array_equal(other.mask, self.mask)
        )

    def __hash__(self):
        return hash((id(self.algebra), self.mask.tobytes()))

    def issubset(self, other):
        return bool(np.all(~self.mask | other.mask))

    def labels(self):
        return self.algebra.labels(self.members)

    def format(self):
        """Canonical one-line listing: sorted element labels in brackets."""
        return "[" + ", ".join(self.labels()) + "]"

    def __repr__(self):
        return f"{type(self).__name__}{self.format()}"


def filter_violation(B, mask):
    """``None`` if ``mask`` is a filter of ``B``, otherwise a reason string."""
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return "empty"
    J, M, C = B.tables
    meets = M[idx[:, None], idx[None, :]]
    if not mask[meets].all():
        return "not closed under meet"
    above = B.order[idx].any(axis=0)
    if (above & ~mask).any():
        return "not upward closed"
    return None


class Filter(_Subset):
    kind = "filter"

    def __init__(self, algebra, mask, verify=True):
        super().__init__(algebra, mask)
        if verify:
            why = filter_violation(algebra, self.mask)
            if why:
                raise NotAFilter(why)

    @classmethod
    def of(cls, B, elements):
        return cls(B, _mask(B, _indices(B, elements)))

    @property
    def proper(self):
        return not self.mask[self.algebra.zero]

    @property
    def generator(self):
        """Product of all members; the filter is the up-set of this element."""
        return int(reduce(self.algebra.meet, self.members.tolist()))


@dataclass(frozen=True)
class FilterClassification:
    proper: bool
    prime: bool
    maximal: bool
    ultra: bool


def up_set(B, x):
    return B.order[_index(B, x)].copy()


def principal_filter(B, x):
    return Filter(B, up_set(B, x), verify=False)


def product(B, xs):
    return int(reduce(B.meet, _indices(B, xs), B.one))


def has_fpp(B, A):
    """Finite product property, via the product of all of ``A``.

    Any sub-product dominates the full product, so the full product being
    nonzero is equivalent to every finite product being nonzero.
    """
    A = list(A)
    if not A:
        raise EmptySet("finite product property needs a nonempty set")
    return product(B, A) != B.zero


def has_fpp_bruteforce(B, A):
    """Finite product property by checking every nonempty sub-family."""
    A = sorted(set(_indices(B, A)))
    if not A:
        raise EmptySet("finite product property needs a nonempty set")
    for sub in range(1, 1 << len(A)):
        p = B.one
        for k, a in enumerate(A):
            if (sub >> k) & 1:
                p = B.meet(p, a)
        if p == B.zero:
            return False
    return True


def generated_filter(B, A):
    """The least filter containing ``A``: everything above some finite product."""
    A = list(A)
    if not has_fpp(B, A):
        raise NoFPP("set lacks the finite product property")
    return Filter(B, up_set(B, product(B, A)), verify=False)


def _is_prime_filter(F):
    B = F.algebra
    J = B.tables[0]
    m = F.mask
    # x + y in F  =>  x in F or y in F
    bad = m[J] & ~(m[:, None] | m[None, :])
    return F.proper and not bad.any()


def _is_ultra(F):
    B = F.algebra
    C = B.tables[2]
    m = F.mask
    # exactly one of x, !x
    return F.proper and bool(np.all(m != m[C]))


def _is_maximal(F):
    """No proper filter strictly contains ``F``.

    Any strictly larger filter contains some ``y`` outside ``F`` and hence the
    filter generated by ``F + {y}``; so it suffices to scan every one-element
    extension and see that each one collapses to the improper filter.
    """
    if not F.proper:
        return False
    B = F.algebra
    g = F.generator
    outside = np.flatnonzero(~F.mask)
    return bool(np.all(B.meet(g, outside) == B.zero))


def classify(F):
    c = FilterClassification(F.proper, _is_prime_filter(F), _is_maximal(F), _is_ultra(F))
    if c.proper:
        check(c.prime == c.maximal == c.ultra, f"prime/maximal/ultra disagree on {F.format()}: {c}")
    return c


def all_filters(B):
    """Every filter of ``B`` (improper one included), ordered by generator.

    Carriers of at most 16 elements are scanned exhaustively over all families
    of elements; larger ones use the fact that finite filters are principal,
    which the exhaustive scan confirms on the small cases.
    """
    if B.size <= FAMILY_SCAN_LIMIT:
        J, M, C = B.tables
        fams = _accel.filter_families(B.order, M)
        out = []
        for fam in fams.tolist():
            mask = np.array([(fam >> i) & 1 for i in range(B.size)], dtype=bool)
            out.append(Filter(B, mask, verify=False))
        out.sort(key=lambda F: F.generator)
        return out
    B.guard()
    return [principal_filter(B, x) for x in range(B.size)]


def extend_to_ultrafilter(F, avoid=None):
    """Greedy extension of a proper filter to an ultrafilter.

    Walk the carrier in canonical order and adopt ``x`` whenever the enlarged
    set keeps the finite product property and (if given) still leaves
    ``avoid`` out of the generated filter.
    """
    B = F.algebra
    if not F.proper:
        raise NotProper("cannot extend an improper filter")
    av = None if avoid is None else _index(B, avoid)
    if av is not None and F.mask[av]:
        raise AvoidInFilter(f"{B.label(av)} already lies in the filter")
    g = F.generator
    cur = F
    for x in range(B.size):
        if cur.mask[x]:
            continue
        p = B.meet(g, x)
        if p == B.zero:
            continue
        cand = up_set(B, p)
        if av is not None and cand[av]:
            continue
        g = p
        cur = Filter(B, cand, verify=False)
    check(classify(cur).ultra, "greedy extension did not reach an ultrafilter")
    return cur


def all_ultrafilters(B):
    """Every ultrafilter exactly once, ordered by generating atom."""
    B.guard()
    C = B.tables[2]
    found = []
    for x in range(1, B.size):
        m = B.order[x]
        if np.all(m != m[C]):
            found.append(Filter(B, m.copy(), verify=False))
    found.sort(key=lambda F: F.generator)
    from .algebra import atoms

    check(len(found) == len(atoms(B)), "number of ultrafilters differs from number of atoms")
    return found


def ultra_to_hom(F):
    """Indicator map of an ultrafilter, as a homomorphism onto the two-element algebra."""
    if not classify(F).ultra:
        raise NotUltra(F.format())
    Z2 = two_element_algebra()
    h = validate_hom(F.mask.astype(np.int64), F.algebra, Z2)
    check(hom_to_ultra(h) == F, "indicator round trip failed")
    return h


def hom_to_ultra(h):
    """Preimage of 1 under a homomorphism onto the two-element algebra."""
    Z2 = two_element_algebra()
    if h.target is not Z2:
        raise MixedAlgebras("homomorphism must land in the two-element algebra")
    F = Filter(h.source, np.asarray(h.mapping) == 1)
    check(classify(F).ultra, "preimage of 1 is not an ultrafilter")
    return F


def ideal_violation(B, mask):
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return "empty"
    J, M, C = B.tables
    if not mask[J[idx[:, None], idx[None, :]]].all():
        return "not closed under join"
    if not mask[M[:, idx]].all():
        return "does not absorb meets"
    return None


class Ideal(_Subset):
    kind = "ideal"

    def __init__(self, algebra, mask, verify=True):
        super().__init__(algebra, mask)
        if verify:
            why = ideal_violation(algebra, self.mask)
            if why:
                raise NotAnIdeal(why)

    @classmethod
    def of(cls, B, elements):
        return cls(B, _mask(B, _indices(B, elements)))

    @property
    def proper(self):
        return not self.mask[self.algebra.one]

    @property
    def prime(self):
        M = self.algebra.tables[1]
        m = self.mask
        bad = m[M] & ~(m[:, None] | m[None, :])
        return self.proper and not bad.any()


def complement_ideal(F):
    """``B \\ F`` for an ultrafilter ``F``, checked to be a prime ideal."""
    if not classify(F).ultra:
        raise NotUltra(F.format())
    I = Ideal(F.algebra, ~F.mask)
    check(I.prime, "complement of an ultrafilter is not a prime ideal")
    return I


def complement_filter(I):
    return Filter(I.algebra, ~I.mask)


def pr_closure_check(B, A):
    """For ``B = P(X)`` and ``A`` a subset of ``X``: ``A in F`` iff ``F`` lies
    in the closure of the principal ultrafilters at the points of ``A``.

    ``A`` is an element of ``B`` (index, :class:`Element` or set text).
    """
    from .topology import closure, stone_space

    if isinstance(A, str):
        A = B.parse_element(A)
    a = _index(B, A)
    if B.natoms > 12:
        raise SizeGuard("universe", B.natoms, 12)
    S = stone_space(B)
    # point p is the principal ultrafilter at the universe member with bit p
    pr = 0
    for p, F in enumerate(S.ultrafilters):
        if B.order[F.generator, a]:
            pr |= 1 << p
    cl = closure(pr, S.space)
    for p, F in enumerate(S.ultrafilters):
        if bool(F.mask[a]) != bool((cl >> p) & 1):
            return False
    return True
