"""Exception hierarchy.

Every rejection the library can produce is a typed exception below
``KleinsailError`` so that callers (and the CLI) can map failures to
exit codes without string matching.
"""


class KleinsailError(Exception):
    """Base class for all library errors."""


# -- polynomial / field construction ----------------------------------------

class ZeroPolynomial(KleinsailError):
    pass


class NotMonic(KleinsailError):
    pass


class NotIrreducible(KleinsailError):
    pass


class NotTotallyReal(KleinsailError):
    pass


class DivisionByZero(KleinsailError):
    pass


# -- hyperbolic matrix verification ------------------------------------------

class NotUnimodular(KleinsailError):
    pass


class Reducible(KleinsailError):
    pass


class RepeatedEigenvalue(KleinsailError):
    pass


class NormalizationFailure(KleinsailError):
    pass


class NotABasis(KleinsailError):
    pass


class ZeroVector(KleinsailError):
    pass


# -- integer lattice work ------------------------------------------------------

class SingularSources(KleinsailError):
    pass


# -- sails ---------------------------------------------------------------------

class EmptyPatch(KleinsailError):
    pass


class NoFixedLine(KleinsailError):
    pass


# -- symmetry classification ----------------------------------------------------

class LemmaViolation(KleinsailError):
    """An internal structural fact failed; indicates an upstream bug."""


class WrongCharPoly(KleinsailError):
    pass


class InconsistentProperness(KleinsailError):
    """Algebraic and geometric properness tests disagree (internal invariant)."""


class NoSigma3(KleinsailError):
    """The field admits no labeling with the required involution structure."""


class RenormalizationFailure(KleinsailError):
    pass


class InputError(KleinsailError):
    """Malformed user input (CLI / JSON layer)."""
