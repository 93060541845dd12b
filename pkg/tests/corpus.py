"""Shared test corpus: algebras, spaces and sub-algebras built deterministically."""

import random
from functools import lru_cache

import numpy as np

from stoneduality.algebra import PowerSetAlgebra, SetAlgebra, two_element_algebra, validate_algebra
from stoneduality.errors import UnsatisfiablePresentation
from stoneduality.terms import And, Not, One, Or, Var, Zero, term_algebra, to_text
from stoneduality.topology import TopSpace, clop, stone_space


def random_term(rng, gens, depth=3):
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.08:
            return Zero()
        if r < 0.16:
            return One()
        return Var(rng.choice(gens))
    op = rng.choice("+*!")
    if op == "!":
        return Not(random_term(rng, gens, depth - 1))
    cls = Or if op == "+" else And
    return cls(random_term(rng, gens, depth - 1), random_term(rng, gens, depth - 1))


@lru_cache(maxsize=None)
def random_presentations(count=36, seed=7):
    """``count`` satisfiable presentations on 2-3 generators with 1-2 relations."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        gens = ["a", "b", "c"][: rng.choice((2, 3))]
        rels = []
        for _ in range(rng.choice((1, 2))):
            rels.append(f"{to_text(random_term(rng, gens))} = {to_text(random_term(rng, gens))}")
        try:
            out.append(term_algebra(gens, rels))
        except UnsatisfiablePresentation:
            continue
    return tuple(out)


def shuffled_table_algebra(natoms, seed):
    """A power set re-presented through tables with scrambled element ids."""
    rng = np.random.default_rng(seed)
    P = PowerSetAlgebra(range(natoms))
    J, M, C = P.tables
    perm = rng.permutation(P.size)  # new id of old element
    inv = np.argsort(perm)
    J2 = perm[J[inv[:, None], inv[None, :]]]
    M2 = perm[M[inv[:, None], inv[None, :]]]
    C2 = perm[C[inv]]
    labels = [f"e{i}" for i in range(P.size)]
    return validate_algebra(J2, M2, C2, labels)


@lru_cache(maxsize=None)
def powersets():
    return tuple(PowerSetAlgebra(range(1, n + 1)) for n in range(1, 6))


@lru_cache(maxsize=None)
def free_term_algebras():
    return tuple(term_algebra(["a", "b", "c"][:k]) for k in range(1, 4))


@lru_cache(maxsize=None)
def set_algebras():
    return _fresh_set_algebras()


def _fresh_set_algebras():
    g = list(range(5))
    return (
        SetAlgebra.from_generators(g, [0b00011, 0b01100]),
        SetAlgebra.from_generators(g, [0b00001]),
        SetAlgebra.from_generators(g, [0b10101, 0b00111]),
    )


def build_algebras():
    """Fresh copies of the corpus algebras, with no cached derived structure."""
    return _assemble(
        [PowerSetAlgebra(range(1, n + 1)) for n in range(1, 6)],
        [term_algebra(["a", "b", "c"][:k]) for k in range(1, 4)],
        [term_algebra(list(B.generators), [_rel_text(r) for r in B.presentation.relations]) for B in random_presentations()],
        fresh=True,
    )


def _rel_text(rel):
    return f"{to_text(rel[0])} = {to_text(rel[1])}"


@lru_cache(maxsize=None)
def algebras():
    """At least 50 algebras: power sets, free and presented term algebras, tables, set algebras."""
    return _assemble(powersets(), free_term_algebras(), random_presentations())


def _assemble(pows, frees, presented, fresh=False):
    items = list(pows) + list(frees) + list(presented)
    items += [two_element_algebra(), shuffled_table_algebra(2, 1), shuffled_table_algebra(3, 2)]
    items += list(_fresh_set_algebras() if fresh else set_algebras())
    items += [clop(disjoint_blocks()), clop(TopSpace.discrete(3))]
    items += [term_algebra(["a", "b"], ["a*b = 0"]), term_algebra(["a", "b", "c"], ["a = b + c"])]
    return tuple(items)


@lru_cache(maxsize=None)
def term_algebras():
    return tuple(B for B in algebras() if B.backend == "terms")


def sierpinski():
    return TopSpace(2, [0, 0b01, 0b11])


def disjoint_blocks():
    return TopSpace(4, [0, 0b0011, 0b1100, 0b1111])


def chain3():
    return TopSpace(3, [0, 0b001, 0b011, 0b111])


@lru_cache(maxsize=None)
def spaces():
    out = [TopSpace.discrete(n) for n in range(1, 5)]
    out += [TopSpace.indiscrete(2), TopSpace.indiscrete(3), sierpinski(), disjoint_blocks(), chain3()]
    out += [TopSpace.from_basis(4, [0b0001, 0b0011, 0b1100, 0b0100, 0b1000])]
    out += [stone_space(B).space for B in powersets()[:3]]
    out += [stone_space(free_term_algebras()[1]).space]
    return tuple(out)


@lru_cache(maxsize=None)
def compact_hausdorff_targets():
    """Compact Hausdorff spaces with at most four points."""
    return tuple(TopSpace.discrete(n) for n in range(1, 5)) + (
        stone_space(PowerSetAlgebra(["x", "y"])).space,
        stone_space(term_algebra(["a", "b"])).space,
    )
