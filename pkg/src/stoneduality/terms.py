"""Boolean terms: parsing, printing, evaluation, and the term-algebra backend.

Grammar (whitespace insignificant)::

    expr   := term {"+" term}
    term   := factor {"*" factor}
    factor := "!" factor | "0" | "1" | ident | "(" expr ")"
    ident  := [a-z][a-z0-9_]*

``+`` is join, ``*`` is meet, ``!`` is complement. A presentation (generators
plus relations ``t1 = t2``) denotes the quotient of the free algebra, which is
realised as the power set of the satisfying assignments ("models"): an element
is the bit-vector of a term's truth values over the models, listed in
lexicographic order of the assignment with ``0 < 1``.
"""

import re
from dataclasses import dataclass
from itertools import product

from .algebra import BoolAlgebra, Element
from .errors import InputError, TermSyntaxError, UnknownVariable, UnsatisfiablePresentation


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


_TOKEN = re.compile(r"\s*(?:([a-z][a-z0-9_]*)|([01])|([+*!()=])|(\S))")

_FACTOR_START = frozenset({"!", "0", "1", "identifier", "("})


def tokenize(text):
    """List of ``(kind, value, position)``; ends with an ``("end", None, len)`` token."""
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        ident, const, op, junk = m.groups()
        if ident is not None:
            toks.append(("identifier", ident, start))
        elif const is not None:
            toks.append((const, const, start))
        elif op is not None:
            toks.append((op, op, start))
        else:
            raise TermSyntaxError(start, _FACTOR_START | {"+", "*"}, junk)
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, generators):
        self.toks = tokenize(text)
        self.i = 0
        self.generators = None if generators is None else set(generators)

    def peek(self):
        return self.toks[self.i]

    def fail(self, expected):
        kind, value, pos = self.peek()
        raise TermSyntaxError(pos, expected, value)

    def expr(self):
        node = self.term()
        while self.peek()[0] == "+":
            self.i += 1
            node = Or(node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.i += 1
            node = And(node, self.factor())
        return node

    def factor(self):
        kind, value, pos = self.peek()
        if kind == "!":
            self.i += 1
            return Not(self.factor())
        if kind == "0":
            self.i += 1
            return Zero()
        if kind == "1":
            self.i += 1
            return One()
        if kind == "identifier":
            if self.generators is not None and value not in self.generators:
                raise UnknownVariable(value)
            self.i += 1
            return Var(value)
        if kind == "(":
            self.i += 1
            node = self.expr()
            if self.peek()[0] != ")":
                self.fail({"+", "*", ")"})
            self.i += 1
            return node
        self.fail(_FACTOR_START)


def parse(text, generators=None):
    """Parse a term; with ``generators`` given, other identifiers raise :class:`UnknownVariable`."""
    p = _Parser(text, generators)
    node = p.expr()
    if p.peek()[0] != "end":
        p.fail({"+", "*", "end of input"})
    return node


def parse_relation(text, generators=None):
    """Parse ``t1 = t2`` into a pair of terms."""
    if text.count("=") != 1:
        raise InputError(f"relation must have exactly one '=': {text!r}")
    lhs, rhs = text.split("=")
    left = parse(lhs, generators)
    try:
        right = parse(rhs, generators)
    except TermSyntaxError as exc:
        off = len(lhs) + 1
        raise TermSyntaxError(exc.position + off, exc.expected, exc.found) from None
    return left, right


def variables(t):
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Not):
        return variables(t.arg)
    if isinstance(t, (And, Or)):
        return variables(t.left) | variables(t.right)
    return set()


def to_text(t):
    """Fully parenthesised rendering, stable under :func:`parse`."""
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Not):
        return "!" + to_text(t.arg)
    op = " * " if isinstance(t, And) else " + "
    return "(" + to_text(t.left) + op + to_text(t.right) + ")"


def evaluate(t, assignment):
    """Value of ``t`` in the two-element algebra under ``assignment`` (name -> 0/1)."""
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, Var):
        if t.name not in assignment:
            raise UnknownVariable(t.name)
        return 1 if assignment[t.name] else 0
    if isinstance(t, Not):
        return 1 - evaluate(t.arg, assignment)
    if isinstance(t, And):
        return evaluate(t.left, assignment) & evaluate(t.right, assignment)
    if isinstance(t, Or):
        return evaluate(t.left, assignment) | evaluate(t.right, assignment)
    raise TypeError(f"not a term: {t!r}")


def truth_mask(t, columns, full):
    """Truth values of ``t`` over a list of assignments, packed as a bit-mask.

    ``columns`` maps each variable to the mask of assignments where it is 1.
    """
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return full
    if isinstance(t, Var):
        if t.name not in columns:
            raise UnknownVariable(t.name)
        return columns[t.name]
    if isinstance(t, Not):
        return full ^ truth_mask(t.arg, columns, full)
    if isinstance(t, And):
        return truth_mask(t.left, columns, full) & truth_mask(t.right, columns, full)
    return truth_mask(t.left, columns, full) | truth_mask(t.right, columns, full)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relations: tuple = ()

    def models(self):
        """Assignments (tuples of 0/1 in generator order) satisfying every relation."""
        out = []
        for vals in product((0, 1), repeat=len(self.generators)):
            a = dict(zip(self.generators, vals))
            # t1 = t2 is enforced as (t1 xor t2) = 0
            if all(evaluate(l, a) ^ evaluate(r, a) == 0 for l, r in self.relations):
                out.append(vals)
        return out


def presentation(generators, relations=()):
    """Build a :class:`Presentation` from generator names and relation strings or pairs."""
    gens = tuple(generators)
    if len(set(gens)) != len(gens):
        raise InputError("duplicate generator")
    for g in gens:
        if not re.fullmatch(r"[a-z][a-z0-9_]*", g):
            raise InputError(f"bad generator name {g!r}")
    rels = []
    for r in relations:
        if isinstance(r, str):
            r = parse_relation(r, gens)
        else:
            for side in r:
                unknown = variables(side) - set(gens)
                if unknown:
                    raise UnknownVariable(sorted(unknown)[0])
        rels.append(tuple(r))
    return Presentation(gens, tuple(rels))


class TermAlgebra(BoolAlgebra):
    """Quotient of the free algebra on the generators by the relations."""

    backend = "terms"

    def __init__(self, pres):
        models = pres.models()
        if not models:
            raise UnsatisfiablePresentation()
        super().__init__(len(models))
        self.presentation = pres
        self.generators = pres.generators
        self.models = models
        self._full = (1 << len(models)) - 1
        self._columns = {
            g: sum(1 << j for j, m in enumerate(models) if m[k]) for k, g in enumerate(self.generators)
        }

    def describe(self):
        rels = "; ".join(f"{to_text(l)} = {to_text(r)}" for l, r in self.presentation.relations)
        gens = ",".join(self.generators)
        return f"terms over {{{gens}}}" + (f" / {rels}" if rels else "")

    def canonical_index(self, t):
        return truth_mask(t, self._columns, self._full)

    def label(self, i):
        return print_canonical(Element(self, int(i)))

    def parse_element(self, text):
        return self.canonical_index(parse(text, self.generators))


def term_algebra(generators, relations=()):
    return TermAlgebra(presentation(generators, relations))


def canonicalize(t, algebra):
    """The element of ``algebra`` denoted by term ``t`` (a term or its text)."""
    if isinstance(t, str):
        t = parse(t, algebra.generators)
    return Element(algebra, algebra.canonical_index(t))


def print_canonical(e):
    """Sum of minterms of the models in ``e``; ``0`` and ``1`` for the bounds.

    Literals follow generator order; products are ordered lexicographically
    with a positive literal before its negation.
    """
    B = e.algebra
    if e.index == B.zero:
        return "0"
    if e.index == B.one:
        return "1"
    chosen = [m for j, m in enumerate(B.models) if (e.index >> j) & 1]
    chosen.sort(key=lambda m: tuple(1 - v for v in m))
    prods = []
    for m in chosen:
        lits = [g if v else "!" + g for g, v in zip(B.generators, m)]
        prods.append("*".join(lits))
    return " + ".join(prods)
