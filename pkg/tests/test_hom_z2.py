import numpy as np
import pytest

import corpus
import oracles
from stoneduality.algebra import PowerSetAlgebra, two_element_algebra
from stoneduality.errors import SizeGuard
from stoneduality.hom_z2 import (
    FunctionSpace,
    all_homs,
    constraint_sets,
    function_space,
    hom_closedness_check,
    hom_listing,
    hom_space,
    hom_spec_homeo,
    hom_ultra_homeo,
    homs_bruteforce,
)
from stoneduality.terms import term_algebra
from stoneduality.topology import TopSpace, check_axioms, stone_space


def test_function_space_examples():
    W = function_space(two_element_algebra())
    assert W.npoints == 4
    assert W.space() == TopSpace.discrete(4)
    W1 = FunctionSpace(1)
    assert W1.npoints == 2 and W1.space().npoints == 2
    assert check_axioms(W1.space()).stone


def test_subbasis_partitions_space():
    for n in range(1, 6):
        W = FunctionSpace(n)
        for z, o in W.subbasis():
            assert (z | o).all() and not (z & o).any()


def test_subbasis_sets_clopen_when_materialised():
    W = FunctionSpace(PowerSetAlgebra([1, 2]))
    X = W.space()
    for z, o in W.subbasis():
        zi = int(sum(1 << int(p) for p in np.flatnonzero(z)))
        assert X.is_clopen(zi)
    assert check_axioms(X).stone


def test_guards():
    with pytest.raises(SizeGuard):
        FunctionSpace(17)
    with pytest.raises(SizeGuard):
        FunctionSpace(PowerSetAlgebra(range(3))).space()


def test_hom_examples():
    assert len(all_homs(PowerSetAlgebra([1, 2, 3]))) == 3
    h = all_homs(two_element_algebra())
    assert len(h) == 1 and h[0].mapping.tolist() == [0, 1]
    assert len(all_homs(term_algebra(["a", "b"]))) == 4
    assert [hom_listing(h) for h in all_homs(PowerSetAlgebra([1, 2]))] == [
        "[{1}, {1,2}]",
        "[{2}, {1,2}]",
    ]


def test_hom_counts_match_bruteforce_and_atoms():
    for B in corpus.algebras():
        homs = all_homs(B)
        assert len(homs) == B.natoms
        if B.size <= 16:
            assert len(homs_bruteforce(B)) == len(homs)
        if B.size <= 8:
            got = {tuple(h.mapping.tolist()) for h in homs}
            assert got == set(oracles.homs_to_z2(B))


def test_homs_preserve_complement():
    for B in corpus.algebras():
        C = B.tables[2]
        for h in all_homs(B):
            assert np.array_equal(h.mapping[C], 1 - h.mapping)


def test_closedness_examples():
    assert hom_closedness_check(two_element_algebra())
    assert hom_closedness_check(PowerSetAlgebra([1, 2]))
    assert hom_closedness_check(PowerSetAlgebra([1, 2, 3]))


def test_constraint_sets_equal_law_filter():
    small = [B for B in corpus.algebras() if B.size <= 8]
    for B in small[:12] + [PowerSetAlgebra(range(4))]:
        W, A0, A1, Aj, Am = constraint_sets(B)
        hom = A0 & A1 & Aj.all(axis=(0, 1)) & Am.all(axis=(0, 1))
        expect = {sum(v << i for i, v in enumerate(t)) for t in oracles.homs_to_z2(B)} if B.size <= 8 else set(
            homs_bruteforce(B).tolist()
        )
        assert set(np.flatnonzero(hom).tolist()) == expect
        assert hom_closedness_check(B)


def test_hom_ultra_examples():
    c = hom_ultra_homeo(PowerSetAlgebra([1, 2]))
    assert len(c.mapping) == 2
    c = hom_ultra_homeo(two_element_algebra())
    assert len(c.mapping) == 1
    c = hom_ultra_homeo(term_algebra(["a", "b"]))
    assert len(c.mapping) == 4


def test_subspace_topology_is_transported():
    for B in corpus.algebras():
        c = hom_ultra_homeo(B)
        assert c.checks["subspace_equals_transported"]
        assert hom_spec_homeo(B).checks["bijective"]


def test_hom_space_is_stone():
    for B in corpus.powersets()[:3]:
        H = hom_space(B)
        assert check_axioms(H.space).stone
        assert H.space.npoints == stone_space(B).space.npoints
