import itertools

import numpy as np
import pytest

import corpus
import oracles
from stoneduality.algebra import PowerSetAlgebra, two_element_algebra
from stoneduality.errors import NotATopology, PreconditionFailed
from stoneduality.filters import all_ultrafilters, principal_filter
from stoneduality.terms import term_algebra
from stoneduality.topology import (
    ContinuousMap,
    TopSpace,
    check_axioms,
    clop,
    closure,
    component_clopen_identity,
    components,
    continuity_via_filters,
    converges,
    identity_map,
    is_continuous,
    neighborhood_filter,
    pushforward,
    stone_space,
)


def test_stone_space_examples():
    S = stone_space(PowerSetAlgebra([1, 2]))
    assert S.space == TopSpace.discrete(2)
    assert S.space.points == ["F({1})", "F({2})"]
    S = stone_space(term_algebra(["a"]))
    assert S.space.npoints == 2 and check_axioms(S.space).stone
    assert sorted(S.space.opens.tolist()) == [0, 1, 2, 3]
    for B in corpus.algebras():
        S = stone_space(B)
        assert S.U(B.zero) == 0
        assert S.U(B.one) == S.space.full


def test_basis_laws_exhaustive():
    for B in corpus.algebras():
        S = stone_space(B)
        J, M, C = B.tables
        U = S.basis
        full = S.space.full
        assert np.array_equal(U[M], U[:, None] & U[None, :])
        assert np.array_equal(U[J], U[:, None] | U[None, :])
        assert np.array_equal(U[C], full ^ U)
        # empty intersection of basic sets iff the product vanishes
        for x, y, z in itertools.islice(itertools.product(range(B.size), repeat=3), 300):
            prod = M[M[x, y], z]
            assert ((U[x] & U[y] & U[z]) == 0) == (prod == B.zero)


def test_clopens_are_basis_sets_once():
    for B in corpus.algebras():
        S = stone_space(B)
        basis = S.basis.tolist()
        assert len(set(basis)) == B.size
        for c in S.space.clopens:
            assert basis.count(c) == 1


def test_clop_examples():
    C = clop(TopSpace.discrete(3))
    assert C.size == 8 and C.natoms == 3
    C = clop(corpus.sierpinski())
    assert C.size == 2
    assert clop(TopSpace.indiscrete(3)).size == 2
    assert clop(corpus.disjoint_blocks()).size == 4


def test_connected_iff_two_clopens():
    for X in corpus.spaces():
        connected = len(components(X)) == 1
        assert connected == (clop(X).size == 2)


def test_components_examples():
    assert components(TopSpace.discrete(3)) == [1, 2, 4]
    assert components(TopSpace.indiscrete(2)) == [3]
    assert components(corpus.disjoint_blocks()) == [0b0011, 0b1100]


def test_components_match_bruteforce():
    for X in corpus.spaces():
        ops = X.opens.tolist()
        assert components(X) == oracles.components(X.npoints, ops)


def test_check_axioms_examples():
    ax = check_axioms(TopSpace.discrete(3))
    assert all(vars(ax).values())
    ax = check_axioms(TopSpace.indiscrete(2))
    assert not ax.hausdorff and not ax.totally_disconnected and not ax.t1 and ax.compact
    ax = check_axioms(corpus.sierpinski())
    assert not ax.t1 and not ax.stone
    for B in corpus.algebras():
        assert check_axioms(stone_space(B).space).stone


def test_hausdorff_matches_bruteforce():
    for X in corpus.spaces():
        assert check_axioms(X).hausdorff == oracles.hausdorff(X.npoints, X.opens.tolist())


def test_zero_dim_and_totally_disconnected():
    for X in corpus.spaces():
        ax = check_axioms(X)
        if ax.hausdorff:
            assert not ax.zero_dimensional or ax.totally_disconnected
            if ax.compact:
                assert ax.zero_dimensional == ax.totally_disconnected


def test_component_clopen_identity():
    assert component_clopen_identity(TopSpace.discrete(3))
    assert component_clopen_identity(stone_space(PowerSetAlgebra([1, 2, 3])).space)
    with pytest.raises(PreconditionFailed):
        component_clopen_identity(TopSpace.indiscrete(2))


def test_closure_examples():
    X = corpus.sierpinski()
    assert closure(0, X) == 0
    assert closure(0b01, X) == 0b11
    assert closure(0b10, X) == 0b10
    D = TopSpace.discrete(3)
    for s in range(8):
        assert closure(s, D) == s


def test_closure_matches_bruteforce():
    for X in corpus.spaces():
        for s in range(1 << X.npoints):
            assert closure(s, X) == oracles.closure(s, X.opens.tolist(), X.full)


def test_opens_validated():
    with pytest.raises(NotATopology):
        TopSpace(2, [0, 1, 2])  # missing union and full set
    with pytest.raises(NotATopology):
        TopSpace(2, [1, 3])  # missing empty set
    with pytest.raises(NotATopology):
        TopSpace.from_basis(3, [0b001, 0b011, 0b110])  # 011 & 110 is not a union


def test_basis_closure():
    X = TopSpace.from_subbasis(3, [0b001, 0b011, 0b110])
    assert X.is_open(0b111)
    assert X.is_open(0b010)  # intersection of two basis sets
    assert not X.is_open(0b100)


def test_neighborhood_filter_converges():
    for X in corpus.spaces()[:9]:
        for x in range(X.npoints):
            assert converges(neighborhood_filter(x, X), x, X)


def test_principal_converges_only_to_its_point_in_discrete_space():
    X = TopSpace.discrete(3)
    P = X.powerset
    for x in range(3):
        F = principal_filter(P, 1 << x)
        assert [converges(F, y, X) for y in range(3)] == [y == x for y in range(3)]


def test_pushforward_of_principal():
    X, Y = TopSpace.discrete(3), TopSpace.discrete(2)
    f = [1, 0, 1]
    for x in range(3):
        G = pushforward(f, principal_filter(X.powerset, 1 << x), Y)
        assert G == principal_filter(Y.powerset, 1 << f[x])


def test_continuity_via_filters_examples():
    D2, I2 = TopSpace.discrete(2), TopSpace.indiscrete(2)
    assert continuity_via_filters([0, 1], D2, D2)
    assert continuity_via_filters([1, 0], D2, D2)
    assert continuity_via_filters([1, 1], D2, D2)
    assert not continuity_via_filters([0, 1], I2, D2)
    assert not is_continuous([0, 1], I2, D2)
    X = corpus.sierpinski()
    assert continuity_via_filters([0, 1], X, X)


def test_continuity_matches_bruteforce():
    small = [X for X in corpus.spaces() if X.npoints <= 3]
    for X in small:
        for Y in small:
            for f in itertools.product(range(Y.npoints), repeat=X.npoints):
                expect = oracles.continuous(f, X.opens.tolist(), Y.opens.tolist())
                assert is_continuous(list(f), X, Y) == expect
                if X.npoints <= 2:
                    assert continuity_via_filters(list(f), X, Y) == expect


def test_continuous_map_rejects_discontinuous():
    from stoneduality.errors import StoneError

    with pytest.raises(StoneError):
        ContinuousMap(TopSpace.indiscrete(2), TopSpace.discrete(2), [0, 1])
    idm = identity_map(corpus.chain3())
    assert idm.is_homeomorphism()


def test_two_element_stone_space_is_point():
    S = stone_space(two_element_algebra())
    assert S.space.npoints == 1
    assert len(all_ultrafilters(two_element_algebra())) == 1
