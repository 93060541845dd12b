"""Finite Boolean algebras, their order structure, and homomorphisms.

Every algebra exposes the same interface: a carrier ``0 .. size-1``, the
operations ``join``/``meet``/``complement`` (vectorised over numpy index
arrays), ``zero``/``one``, and printing/parsing of elements. After validation
the carrier index of an element *is* its bit-vector over the atoms, so listing
elements in index order is listing them lexicographically by atom bit-vector.

Backends:

* :class:`PowerSetAlgebra` -- all subsets of a named finite universe,
* :class:`TableAlgebra` -- explicit operation tables (see :func:`validate_algebra`),
* :class:`SetAlgebra` -- a family of subsets of a ground set closed under the
  set operations (clopen algebras, sub-algebras of a power set),
* ``TermAlgebra`` in :mod:`stoneduality.terms`.
"""

from functools import cached_property
from itertools import permutations

import numpy as np

from . import _accel
from .errors import (
    AxiomViolation,
    InputError,
    MixedAlgebras,
    NotAHomomorphism,
    SizeGuard,
    TrivialAlgebra,
    check,
)

MAX_ATOMS = 20
# carrier size allowed for materialised tables and quadratic scans
SCAN_LIMIT = 1 << 12


def popcount(x):
    return bin(x).count("1")


def bits_of(mask):
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def format_set(labels):
    return "{" + ",".join(str(x) for x in labels) + "}"


def parse_set(text):
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise InputError(f"expected a set like {{a,b}}, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return []
    return [tok.strip() for tok in body.split(",")]


class BoolAlgebra:
    """Common interface of the finite backends.

    Subclasses whose carrier index is the atom bit-vector inherit the bitwise
    operations below; :class:`TableAlgebra` overrides them with table lookups.
    """

    backend = "abstract"

    def __init__(self, natoms):
        if natoms > MAX_ATOMS:
            raise SizeGuard("atoms", natoms, MAX_ATOMS)
        if natoms == 0:
            raise TrivialAlgebra()
        self.natoms = natoms
        self.size = 1 << natoms

    zero = 0

    @property
    def one(self):
        return self.size - 1

    def join(self, x, y):
        return x | y

    def meet(self, x, y):
        return x & y

    def complement(self, x):
        return x ^ self.one

    def label(self, i):
        raise NotImplementedError

    def parse_element(self, text):
        raise NotImplementedError

    def describe(self):
        return f"{self.backend} algebra with {self.size} elements"

    def __repr__(self):
        return f"<{type(self).__name__}: {self.describe()}>"

    # -- element handles -------------------------------------------------

    def element(self, i):
        if not 0 <= i < self.size:
            raise InputError(f"element index {i} out of range")
        return Element(self, int(i))

    def elements(self):
        return [Element(self, i) for i in range(self.size)]

    def __getitem__(self, text):
        return Element(self, self.parse_element(text))

    def labels(self, indices):
        return [self.label(int(i)) for i in indices]

    # -- materialised structure -------------------------------------------

    def guard(self, limit=SCAN_LIMIT, what="carrier"):
        if self.size > limit:
            raise SizeGuard(what, self.size, limit)

    @cached_property
    def tables(self):
        """``(join, meet, complement)`` as int64 arrays indexed by carrier."""
        self.guard(what="operation tables")
        xs = np.arange(self.size, dtype=np.int64)
        J = np.asarray(self.join(xs[:, None], xs[None, :]), dtype=np.int64)
        M = np.asarray(self.meet(xs[:, None], xs[None, :]), dtype=np.int64)
        C = np.asarray(self.complement(xs), dtype=np.int64)
        for t in (J, M, C):
            t.setflags(write=False)
        return J, M, C

    @cached_property
    def order(self):
        """Boolean matrix ``L`` with ``L[x, y]`` iff ``x <= y`` (i.e. ``x + y = y``)."""
        J = self.tables[0]
        L = J == np.arange(self.size)[None, :]
        L.setflags(write=False)
        return L

    def check_axioms(self):
        """Run the full axiom scan on the materialised tables."""
        J, M, C = self.tables
        scan_laws(J, M, C)
        return self


class Element:
    """An element of a specific algebra; equality is index equality."""

    __slots__ = ("algebra", "index")

    def __init__(self, algebra, index):
        self.algebra = algebra
        self.index = index

    def _same(self, other):
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            raise MixedAlgebras()

    def __eq__(self, other):
        return isinstance(other, Element) and other.algebra is self.algebra and other.index == self.index

    def __hash__(self):
        return hash((id(self.algebra), self.index))

    def __add__(self, other):
        self._same(other)
        return Element(self.algebra, int(self.algebra.join(self.index, other.index)))

    def __mul__(self, other):
        self._same(other)
        return Element(self.algebra, int(self.algebra.meet(self.index, other.index)))

    def __invert__(self):
        return Element(self.algebra, int(self.algebra.complement(self.index)))

    def __str__(self):
        return self.algebra.label(self.index)

    def __repr__(self):
        return f"Element({self.algebra.label(self.index)})"


def leq(x, y):
    """``x <= y`` iff ``x + y = y``."""
    x._same(y)
    return (x + y) == y


def sup(x, y):
    x._same(y)
    s = x + y
    B = x.algebra
    if B.size <= SCAN_LIMIT:
        uppers = [z for z in B.elements() if leq(x, z) and leq(y, z)]
        check(s in uppers and all(leq(s, z) for z in uppers), "x + y is not the least upper bound")
    return s


def inf(x, y):
    x._same(y)
    m = x * y
    B = x.algebra
    if B.size <= SCAN_LIMIT:
        lowers = [z for z in B.elements() if leq(z, x) and leq(z, y)]
        check(m in lowers and all(leq(z, m) for z in lowers), "x . y is not the greatest lower bound")
    return m


def atoms(B):
    """Minimal nonzero elements, found by scanning the order matrix."""
    B.guard()
    L = B.order
    out = []
    for x in range(1, B.size):
        below = np.flatnonzero(L[:, x])
        # below always holds 0 and x itself
        if below.size == 2:
            out.append(Element(B, x))
    return out


# ---------------------------------------------------------------------------
# axiom validation

PAIR_LAWS = (
    "join_commutativity",
    "meet_commutativity",
    "absorption",
    "complement_join",
    "complement_meet",
)
TRIPLE_LAWS = (
    "join_associativity",
    "meet_associativity",
    "join_distributivity",
    "meet_distributivity",
)


def _first_pair(bad):
    idx = np.argwhere(bad)
    return tuple(int(v) for v in idx[0]) if idx.size else None


def scan_laws(J, M, C):
    """Check the defining laws in a fixed order, raising on the first failure.

    The cheap pairwise laws come first, then the triple scans. Returns
    ``(zero, one)`` as determined by the complement laws.
    """
    n = J.shape[0]
    xs = np.arange(n)
    x = xs[:, None]

    w = _first_pair(J != J.T)
    if w:
        raise AxiomViolation("join_commutativity", w)
    w = _first_pair(M != M.T)
    if w:
        raise AxiomViolation("meet_commutativity", w)
    bad = (J[x, M] != x) | (M[x, J] != x)
    w = _first_pair(bad)
    if w:
        raise AxiomViolation("absorption", w)
    one = J[0, C[0]]
    zero = M[0, C[0]]
    bad = J[xs, C] != one
    if bad.any():
        raise AxiomViolation("complement_join", (int(np.argmax(bad)),))
    bad = M[xs, C] != zero
    if bad.any():
        raise AxiomViolation("complement_meet", (int(np.argmax(bad)),))

    for name, fn, args in (
        ("join_associativity", _accel.assoc_violation, (J,)),
        ("meet_associativity", _accel.assoc_violation, (M,)),
        ("join_distributivity", _accel.distrib_violation, (J, M)),
        ("meet_distributivity", _accel.distrib_violation, (M, J)),
    ):
        w = fn(*args)
        if w[0] >= 0:
            raise AxiomViolation(name, w)

    if zero == one:
        raise TrivialAlgebra()

    diag = xs
    derived = (
        ("meet_idempotence", M[xs, xs] != diag),
        ("join_idempotence", J[xs, xs] != diag),
        ("one_meet_identity", M[one] != diag),
        ("one_join_absorbing", J[one] != one),
        ("zero_join_identity", J[zero] != diag),
        ("zero_meet_absorbing", M[zero] != zero),
        ("double_complement", C[C] != diag),
    )
    for name, bad in derived:
        if bad.any():
            raise AxiomViolation(name, (int(np.argmax(bad)),))
    return int(zero), int(one)


class TableAlgebra(BoolAlgebra):
    """Algebra given by explicit tables, stored in canonical carrier order."""

    backend = "table"

    def __init__(self, join, meet, complement, labels):
        n = join.shape[0]
        super().__init__(n.bit_length() - 1)
        self._J = join
        self._M = meet
        self._C = complement
        self._labels = list(labels)
        self._lookup = {lab: i for i, lab in enumerate(self._labels)}

    def join(self, x, y):
        return self._J[x, y]

    def meet(self, x, y):
        return self._M[x, y]

    def complement(self, x):
        return self._C[x]

    def label(self, i):
        return self._labels[i]

    def parse_element(self, text):
        text = text.strip()
        if text not in self._lookup:
            raise InputError(f"unknown element {text!r}")
        return self._lookup[text]


def validate_algebra(join, meet, complement, labels=None):
    """Validate operation tables and return the algebra in canonical order.

    ``join``/``meet`` are k x k tables and ``complement`` a length-k row, all
    holding element ids ``0 .. k-1``. Raises :class:`AxiomViolation` (naming
    the law and witnesses in the caller's ids) or :class:`TrivialAlgebra`.
    """
    J = np.asarray(join, dtype=np.int64)
    M = np.asarray(meet, dtype=np.int64)
    C = np.asarray(complement, dtype=np.int64)
    k = C.shape[0] if C.ndim == 1 else -1
    if k < 1 or J.shape != (k, k) or M.shape != (k, k):
        raise InputError("tables must be k x k, k x k and length k")
    for t in (J, M, C):
        if t.min() < 0 or t.max() >= k:
            raise InputError("table entries must be element ids 0..k-1")
    if k > SCAN_LIMIT:
        raise SizeGuard("carrier", k, SCAN_LIMIT)
    if labels is None:
        labels = [str(i) for i in range(k)]
    labels = list(labels)
    if len(labels) != k or len(set(labels)) != k:
        raise InputError("labels must be k distinct names")
    if k == 1:
        raise TrivialAlgebra()

    zero, one = scan_laws(J, M, C)

    # canonical reindexing: key[x] = bit-vector of the atoms below x
    L = J == np.arange(k)[None, :]
    atom_ids = [x for x in range(k) if x != zero and np.count_nonzero(L[:, x]) == 2]
    key = np.zeros(k, dtype=np.int64)
    for bit, a in enumerate(atom_ids):
        key[L[a]] |= 1 << bit
    check(
        k == 1 << len(atom_ids) and len(set(key.tolist())) == k,
        "finite algebra is not isomorphic to the power set of its atoms",
    )
    inv = np.empty(k, dtype=np.int64)
    inv[key] = np.arange(k)
    J2 = key[J[inv[:, None], inv[None, :]]]
    M2 = key[M[inv[:, None], inv[None, :]]]
    C2 = key[C[inv]]
    for t in (J2, M2, C2):
        t.setflags(write=False)
    return TableAlgebra(J2, M2, C2, [labels[i] for i in inv])


class PowerSetAlgebra(BoolAlgebra):
    """All subsets of a finite universe; element index = membership bit-mask."""

    backend = "powerset"

    def __init__(self, universe):
        universe = list(universe)
        if len(set(map(str, universe))) != len(universe):
            raise InputError("universe members must be distinct")
        super().__init__(len(universe))
        self.universe = universe
        self._pos = {str(u): i for i, u in enumerate(universe)}

    def describe(self):
        return f"powerset of {format_set(self.universe)}"

    def label(self, i):
        return format_set(self.universe[b] for b in bits_of(int(i)))

    def parse_element(self, text):
        mask = 0
        for tok in parse_set(text):
            if tok not in self._pos:
                raise InputError(f"{tok!r} is not in the universe")
            mask |= 1 << self._pos[tok]
        return mask

    def subset(self, members):
        """Index of the subset holding ``members`` (universe values)."""
        return self.parse_element(format_set(members))


class SetAlgebra(BoolAlgebra):
    """A family of subsets of ``ground`` closed under union, intersection, complement.

    Members are ground bit-masks. The atoms are the minimal nonempty members;
    element index ``i`` stands for the union of the atoms selected by ``i``.
    """

    backend = "sets"

    def __init__(self, ground, members):
        ground = list(ground)
        self.ground = ground
        full = (1 << len(ground)) - 1
        fam = sorted({int(m) for m in members})
        if not ground:
            raise TrivialAlgebra()
        if len(fam) > SCAN_LIMIT:
            raise SizeGuard("family", len(fam), SCAN_LIMIT)
        famset = set(fam)
        if 0 not in famset or full not in famset:
            raise AxiomViolation("bounds", (0 if 0 not in famset else full,))
        for a in fam:
            if full ^ a not in famset:
                raise AxiomViolation("complement_closure", (a,))
            for b in fam:
                if a | b not in famset:
                    raise AxiomViolation("union_closure", (a, b))
                if a & b not in famset:
                    raise AxiomViolation("intersection_closure", (a, b))
        atom_sets = [a for a in fam if a and not any(b and b != a and b & a == b for b in fam)]
        super().__init__(len(atom_sets))
        self.atom_sets = atom_sets
        self.full = full
        subsets = []
        for i in range(self.size):
            s = 0
            for b in bits_of(i):
                s |= atom_sets[b]
            subsets.append(s)
        check(sorted(subsets) == fam, "family is not the set of unions of its atoms")
        self._subsets = subsets
        self._index = {s: i for i, s in enumerate(subsets)}

    @classmethod
    def from_generators(cls, ground, generators, limit=12):
        """Close ``generators`` (ground masks) under the set operations."""
        if len(ground) > limit:
            raise SizeGuard("ground set", len(ground), limit)
        full = (1 << len(ground)) - 1
        fam = {0, full} | {int(g) & full for g in generators}
        while True:
            new = set(fam)
            for a in fam:
                new.add(full ^ a)
                for b in fam:
                    new.add(a | b)
                    new.add(a & b)
            if new == fam:
                break
            fam = new
        return cls(ground, fam)

    def describe(self):
        return f"algebra of {self.size} subsets of {format_set(self.ground)}"

    def subset(self, i):
        """Ground bit-mask of element ``i``."""
        return self._subsets[int(i)]

    def members(self):
        return list(self._subsets)

    def contains(self, mask):
        return int(mask) in self._index

    def index_of(self, mask):
        try:
            return self._index[int(mask)]
        except KeyError:
            raise InputError(f"set {self.format_mask(mask)} is not a member") from None

    def format_mask(self, mask):
        return format_set(self.ground[b] for b in bits_of(int(mask)))

    def label(self, i):
        return self.format_mask(self._subsets[int(i)])

    def parse_element(self, text):
        pos = {str(g): k for k, g in enumerate(self.ground)}
        mask = 0
        for tok in parse_set(text):
            if tok not in pos:
                raise InputError(f"{tok!r} is not a ground point")
            mask |= 1 << pos[tok]
        return self.index_of(mask)


_Z2 = None


def two_element_algebra():
    """The algebra on ``{0, 1}``; a single shared instance."""
    global _Z2
    if _Z2 is None:
        _Z2 = validate_algebra([[0, 1], [1, 1]], [[0, 0], [0, 1]], [1, 0], labels=["0", "1"])
    return _Z2


# ---------------------------------------------------------------------------
# homomorphisms


class Homomorphism:
    """A verified map between algebras, stored as an index array."""

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.mapping = np.asarray(mapping, dtype=np.int64)
        self.mapping.setflags(write=False)

    def __call__(self, x):
        if isinstance(x, Element):
            if x.algebra is not self.source:
                raise MixedAlgebras()
            return Element(self.target, int(self.mapping[x.index]))
        return self.mapping[x]

    def __eq__(self, other):
        return (
            isinstance(other, Homomorphism)
            and other.source is self.source
            and other.target is self.target
            and np.array_equal(other.mapping, self.mapping)
        )

    __hash__ = None

    def compose(self, inner):
        """``self o inner``."""
        if inner.target is not self.source:
            raise MixedAlgebras("cannot compose: codomain/domain mismatch")
        return Homomorphism(inner.source, self.target, self.mapping[inner.mapping])

    def pairs(self):
        return [(self.source.label(i), self.target.label(int(v))) for i, v in enumerate(self.mapping)]

    def __repr__(self):
        return f"Homomorphism({self.source.describe()} -> {self.target.describe()})"


def _as_mapping(phi, B1, B2):
    if isinstance(phi, Homomorphism):
        return phi.mapping
    if callable(phi):
        vals = [phi(i) for i in range(B1.size)]
    elif isinstance(phi, dict):
        vals = [phi[i] for i in range(B1.size)]
    else:
        vals = list(phi)
    vals = [v.index if isinstance(v, Element) else int(v) for v in vals]
    if len(vals) != B1.size or min(vals) < 0 or max(vals) >= B2.size:
        raise InputError("map must send every source element to a target element")
    return np.asarray(vals, dtype=np.int64)


def validate_hom(phi, B1, B2):
    """Check that ``phi`` preserves 0, 1, join and meet; return a :class:`Homomorphism`."""
    f = _as_mapping(phi, B1, B2)
    if f[B1.zero] != B2.zero:
        raise NotAHomomorphism("zero", (B1.zero,))
    if f[B1.one] != B2.one:
        raise NotAHomomorphism("one", (B1.one,))
    J1, M1, C1 = B1.tables
    J2, M2, C2 = B2.tables
    w = _first_pair(f[J1] != J2[f[:, None], f[None, :]])
    if w:
        raise NotAHomomorphism("join", w)
    w = _first_pair(f[M1] != M2[f[:, None], f[None, :]])
    if w:
        raise NotAHomomorphism("meet", w)
    bad = f[C1] != C2[f]
    if bad.any():
        raise NotAHomomorphism("complement", (int(np.argmax(bad)),))
    return Homomorphism(B1, B2, f)


def identity_hom(B):
    return Homomorphism(B, B, np.arange(B.size))


def is_isomorphism(h):
    return h.source.size == h.target.size and np.unique(h.mapping).size == h.source.size


def find_isomorphism(B1, B2, max_atoms=7):
    """Search atom permutations for an isomorphism ``B1 -> B2``; ``None`` if none."""
    a1, a2 = atoms(B1), atoms(B2)
    if len(a1) != len(a2):
        return None
    if len(a1) > max_atoms:
        raise SizeGuard("atom permutation search", len(a1), max_atoms)
    L1 = B1.order
    below = [[j for j, a in enumerate(a1) if L1[a.index, x]] for x in range(B1.size)]
    for perm in permutations(range(len(a2))):
        f = []
        for x in range(B1.size):
            v = B2.zero
            for j in below[x]:
                v = B2.join(v, a2[perm[j]].index)
            f.append(int(v))
        try:
            h = validate_hom(f, B1, B2)
        except NotAHomomorphism:
            continue
        if is_isomorphism(h):
            return h
    return None
