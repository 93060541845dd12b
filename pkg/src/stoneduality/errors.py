"""Exception hierarchy.

``InputError`` subclasses signal malformed input (CLI exit status 2); every
other ``StoneError`` signals a failed verification or a refused construction
(exit status 1).
"""


class StoneError(Exception):
    """Base class for every error raised by the package."""


class InputError(StoneError):
    """Malformed file, term or element text."""


class TermSyntaxError(InputError, SyntaxError):
    """Malformed term; also a builtin ``SyntaxError`` so generic handlers catch it."""

    def __init__(self, position, expected, found=None):
        self.position = position
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        got = "end of input" if found is None else repr(found)
        super().__init__(f"syntax error at position {position}: found {got}, expected one of {{{exp}}}")


class UnknownVariable(InputError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown variable {name!r}")


class SizeGuard(StoneError):
    def __init__(self, what, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds guard {limit}")


class AxiomViolation(StoneError):
    def __init__(self, name, witnesses):
        self.name = name
        self.witnesses = tuple(witnesses)
        super().__init__(f"axiom {name!r} violated at {self.witnesses}")


class TrivialAlgebra(StoneError):
    def __init__(self, msg="0 = 1: the one-element algebra is not admitted"):
        super().__init__(msg)


class MixedAlgebras(StoneError):
    def __init__(self, msg="elements belong to different algebras"):
        super().__init__(msg)


class NotAHomomorphism(StoneError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = tuple(witness)
        super().__init__(f"map does not preserve {law} at {self.witness}")


class UnsatisfiablePresentation(StoneError):
    def __init__(self, msg="no assignment satisfies the relations"):
        super().__init__(msg)


class EmptySet(StoneError):
    pass


class NoFPP(StoneError):
    """The set lacks the finite product property."""


class NotAFilter(StoneError):
    pass


class NotAnIdeal(StoneError):
    pass


class NotProper(StoneError):
    pass


class AvoidInFilter(StoneError):
    pass


class NotUltra(StoneError):
    pass


class NotATopology(StoneError):
    pass


class NotContinuous(StoneError):
    def __init__(self, open_set):
        self.open_set = open_set
        super().__init__(f"preimage of open set {open_set} is not open")


class PreconditionFailed(StoneError):
    pass


class NotStone(StoneError):
    pass


class NotBooleanRing(StoneError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = tuple(witness)
        super().__init__(f"ring law {law!r} fails at {self.witness}")


class DoesNotSeparate(StoneError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"points {self.pair} are not separated")


class IntersectionNotSingleton(StoneError):
    pass


class VerificationError(StoneError):
    """A property that the mathematics guarantees did not hold."""


def check(cond, msg):
    if not cond:
        raise VerificationError(msg)
