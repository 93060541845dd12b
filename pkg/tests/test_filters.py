import numpy as np
import pytest

import corpus
import oracles
from stoneduality.algebra import PowerSetAlgebra, atoms, two_element_algebra
from stoneduality.errors import AvoidInFilter, EmptySet, NoFPP, NotAFilter, NotProper, NotUltra
from stoneduality.filters import (
    Filter,
    Ideal,
    all_filters,
    all_ultrafilters,
    classify,
    complement_filter,
    complement_ideal,
    extend_to_ultrafilter,
    generated_filter,
    has_fpp,
    has_fpp_bruteforce,
    hom_to_ultra,
    pr_closure_check,
    principal_filter,
    ultra_to_hom,
)
from stoneduality.terms import term_algebra

P3 = PowerSetAlgebra([1, 2, 3])
P2 = PowerSetAlgebra([1, 2])


def idx(B, *texts):
    return [B.parse_element(t) for t in texts]


def test_fpp_examples():
    assert has_fpp(P3, idx(P3, "{1,2}", "{2,3}"))
    assert not has_fpp(P2, idx(P2, "{1}", "{2}"))
    with pytest.raises(EmptySet):
        has_fpp(P2, [])
    F = principal_filter(P3, P3["{2}"])
    m = F.members.tolist()
    for k in range(1, 1 << len(m)):
        sub = [x for j, x in enumerate(m) if (k >> j) & 1]
        assert has_fpp(P3, sub)


def test_fpp_shortcut_matches_all_subsets():
    import random

    rng = random.Random(1)
    for B in corpus.algebras()[:20]:
        for _ in range(20):
            A = rng.sample(range(B.size), rng.randint(1, min(5, B.size)))
            assert has_fpp(B, A) == has_fpp_bruteforce(B, A)


def test_generated_filter_examples():
    F = generated_filter(P3, idx(P3, "{1,2}", "{2,3}"))
    assert F.labels() == ["{2}", "{1,2}", "{2,3}", "{1,2,3}"]
    brute = [x for x in range(8) if all(P3.order[P3.meet(a, b), x] for a, b in [(3, 6)])]
    assert F.members.tolist() == brute
    assert generated_filter(P3, [P3.one]).members.tolist() == [P3.one]
    for x in range(1, 8):
        assert generated_filter(P3, [x]) == principal_filter(P3, x)
    with pytest.raises(NoFPP):
        generated_filter(P2, idx(P2, "{1}", "{2}"))


def test_generated_filter_is_least():
    B = PowerSetAlgebra([1, 2, 3, 4])
    filters = all_filters(B)
    for A in ([3, 5], [7], [1, 3, 9], [15]):
        G = generated_filter(B, A)
        for F in filters:
            if all(F.mask[a] for a in A):
                assert G.issubset(F)


def test_classify_examples():
    c = classify(principal_filter(P3, P3["{2}"]))
    assert c.proper and c.prime and c.maximal and c.ultra
    c = classify(principal_filter(P3, P3["{1,2}"]))
    assert c.proper and not c.ultra and not c.prime and not c.maximal
    c = classify(Filter(P3, np.ones(8, dtype=bool)))
    assert not c.proper


def test_not_a_filter():
    with pytest.raises(NotAFilter):
        Filter.of(P3, idx(P3, "{1}", "{2}"))
    with pytest.raises(NotAFilter):
        Filter.of(P3, idx(P3, "{1}"))
    with pytest.raises(NotAFilter):
        Filter(P3, np.zeros(8, dtype=bool))


def test_extend_examples():
    F = principal_filter(P3, P3["{1,2}"])
    M = extend_to_ultrafilter(F, avoid=P3["{1,3}"])
    assert M == principal_filter(P3, P3["{2}"])
    U = principal_filter(P3, P3["{3}"])
    assert extend_to_ultrafilter(U) == U
    top = principal_filter(P2, P2.one)
    assert extend_to_ultrafilter(top) == principal_filter(P2, P2["{1}"])
    with pytest.raises(NotProper):
        extend_to_ultrafilter(principal_filter(P2, 0))
    with pytest.raises(AvoidInFilter):
        extend_to_ultrafilter(F, avoid=P3["{1,2}"])


def test_extend_every_proper_filter_avoiding_outside_elements():
    for B in corpus.algebras()[:12]:
        if B.size > 16:
            continue
        for F in all_filters(B):
            if not F.proper:
                continue
            for a in np.flatnonzero(~F.mask).tolist():
                M = extend_to_ultrafilter(F, avoid=a)
                assert classify(M).ultra and F.issubset(M) and not M.mask[a]


def test_ultrafilter_examples():
    assert len(all_ultrafilters(P3)) == 3
    assert len(all_ultrafilters(term_algebra(["a", "b"]))) == 4
    assert len(all_ultrafilters(term_algebra(["a", "b"], ["a*b = 0"]))) == 3


def test_ultrafilters_match_bruteforce():
    for B in corpus.algebras():
        if B.size > 8:
            continue
        got = [frozenset(F.members.tolist()) for F in all_ultrafilters(B)]
        assert set(got) == set(oracles.ultrafilters(B))
        assert len(got) == len(atoms(B))


def test_all_filters_match_bruteforce():
    for B in [P2, P3, two_element_algebra(), term_algebra(["a", "b"], ["a*b = 0"])]:
        got = {frozenset(F.members.tolist()) for F in all_filters(B)}
        assert got == set(oracles.all_filters(B))


def test_ultra_hom_round_trip():
    F = principal_filter(P2, P2["{1}"])
    h = ultra_to_hom(F)
    assert h.mapping.tolist() == [0, 1, 0, 1]
    for B in corpus.algebras():
        for F in all_ultrafilters(B):
            h = ultra_to_hom(F)
            assert hom_to_ultra(h) == F
            assert F.mask[B.one]
    with pytest.raises(NotUltra):
        ultra_to_hom(principal_filter(P3, P3["{1,2}"]))


def test_complement_ideal_examples():
    F = principal_filter(P2, P2["{1}"])
    I = complement_ideal(F)
    assert I.labels() == ["{}", "{2}"]
    assert I.prime and not I.mask[P2.one]
    assert complement_filter(I) == F
    with pytest.raises(NotUltra):
        complement_ideal(principal_filter(P3, P3["{1,2}"]))
    assert Ideal.of(P2, [0]).proper and not Ideal.of(P2, [0]).prime


def test_ultra_maximal_for_fpp():
    # x meeting every member of an ultrafilter belongs to it
    for B in corpus.algebras()[:15]:
        M = B.tables[1]
        for F in all_ultrafilters(B):
            for x in range(B.size):
                if all(M[x, a] != B.zero for a in F.members.tolist()):
                    assert F.mask[x]


def test_pr_closure_examples():
    assert pr_closure_check(P3, "{1,2}")
    assert pr_closure_check(P3, "{}")
    assert pr_closure_check(P3, "{1,2,3}")
    for a in range(16):
        assert pr_closure_check(PowerSetAlgebra(range(4)), a)
