"""Both representation theorems and the contravariant passage between
homomorphisms and continuous maps.

A :class:`DualityCertificate` is only ever constructed after every one of its
checks has passed; a failed check raises :class:`VerificationError` instead.
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import is_isomorphism, validate_hom
from .errors import NotStone, VerificationError, check
from .filters import Filter, classify
from .topology import ContinuousMap, check_axioms, clop, preimages, stone_space


@dataclass
class DualityCertificate:
    direction: str  # "algebra-side" or "space-side"
    statement: str
    source: str
    target: str
    mapping: list
    checks: dict
    witness: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        failed = [k for k, ok in self.checks.items() if not ok]
        if failed:
            raise VerificationError(f"{self.statement}: failed {', '.join(failed)}")

    def to_dict(self):
        return {
            "direction": self.direction,
            "statement": self.statement,
            "source": self.source,
            "target": self.target,
            "mapping": [[str(a), str(b)] for a, b in self.mapping],
            "checks": dict(self.checks),
        }


def _inverse_continuous(f):
    return f.is_bijective() and all(f.target.is_open(u) for u in _images(f))


def _images(f):
    from .topology import image

    return [image(f.mapping, u) for u in f.source.opens.tolist()]


def rep_iso(B):
    """``x -> U_x`` from ``B`` onto the clopen algebra of its ultrafilter space."""
    S = stone_space(B)
    C = clop(S.space)
    f = [C.index_of(S.U(x)) for x in range(B.size)]
    h = validate_hom(f, B, C)
    checks = {
        "homomorphism": True,
        "injective": len(set(f)) == B.size,
        "surjective": len(set(f)) == C.size,
    }
    return DualityCertificate(
        "algebra-side",
        "B is isomorphic to Clop(U(B))",
        B.describe(),
        f"Clop of {S.space.npoints}-point ultrafilter space",
        h.pairs(),
        checks,
        witness=h,
    )


def rep_homeo(X):
    """``x -> {clopen U : x in U}`` from a Stone space onto ``U(Clop(X))``."""
    ax = check_axioms(X)
    if not ax.stone:
        raise NotStone(f"space fails: {', '.join(k for k, v in vars(ax).items() if not v)}")
    C = clop(X)
    S = stone_space(C)
    psi = []
    for x in range(X.npoints):
        m = np.array([(C.subset(i) >> x) & 1 for i in range(C.size)], dtype=bool)
        F = Filter(C, m)
        check(classify(F).ultra, "clopen sets around a point do not form an ultrafilter")
        psi.append(S.point_of(F))
    f = ContinuousMap(X, S.space, psi)
    # psi^-1(U_C) = C for every clopen C
    pre_ok = all(int(preimages(f.mapping, [S.U(i)])[0]) == C.subset(i) for i in range(C.size))
    checks = {
        "continuous": True,
        "bijective": f.is_bijective(),
        "inverse_continuous": _inverse_continuous(f),
        "preimage_of_basic_is_clopen": pre_ok,
    }
    return DualityCertificate(
        "space-side",
        "X is homeomorphic to U(Clop(X))",
        f"{X.npoints}-point space",
        f"{S.space.npoints}-point ultrafilter space of Clop(X)",
        f.pairs(),
        checks,
        witness=f,
    )


def dual_hom(phi):
    """``F -> phi^-1(F)`` from ``U(B2)`` to ``U(B1)`` for ``phi : B1 -> B2``."""
    B1, B2 = phi.source, phi.target
    S1, S2 = stone_space(B1), stone_space(B2)
    pts = []
    for G in S2.ultrafilters:
        F = Filter(B1, G.mask[phi.mapping])
        check(classify(F).ultra, "preimage of an ultrafilter is not an ultrafilter")
        pts.append(S1.point_of(F))
    f = ContinuousMap(S2.space, S1.space, pts)
    pre = preimages(f.mapping, S1.basis)
    check(np.array_equal(pre, S2.basis[phi.mapping]), "preimage of U_x differs from U_phi(x)")
    if is_isomorphism(phi):
        check(f.is_homeomorphism(), "dual of an isomorphism is not a homeomorphism")
    return f


def dual_map(f):
    """``U -> f^-1(U)`` from ``Clop(Y)`` to ``Clop(X)`` for continuous ``f : X -> Y``."""
    CX, CY = clop(f.source), clop(f.target)
    pre = preimages(f.mapping, [CY.subset(i) for i in range(CY.size)])
    h = validate_hom([CX.index_of(int(u)) for u in pre], CY, CX)
    if f.is_homeomorphism():
        check(is_isomorphism(h), "dual of a homeomorphism is not an isomorphism")
    return h


def dual_check(B):
    """Representation isomorphism plus the three-way agreement of Stone spaces."""
    from .hom_z2 import hom_spec_homeo, hom_ultra_homeo
    from .ring import spec_ultra_homeo

    B.check_axioms()
    iso = rep_iso(B)
    a = hom_ultra_homeo(B)
    b = spec_ultra_homeo(B)
    c = hom_spec_homeo(B)
    fa, fb, fc = a.witness, b.witness, c.witness
    checks = {
        "spec_after_ultra_is_direct": np.array_equal(fb.mapping[fa.mapping], fc.mapping),
        "ultra_is_spec_inverse_after_direct": np.array_equal(fb.inverse().mapping[fc.mapping], fa.mapping),
        "spec_is_direct_after_ultra_inverse": np.array_equal(fc.mapping[fa.inverse().mapping], fb.mapping),
    }
    triple = DualityCertificate(
        "algebra-side",
        "U(B), Hom(B,Z2), Spec(R_B) agree",
        B.describe(),
        "three Stone spaces",
        [],
        checks,
    )
    return [iso, a, b, c, triple]

