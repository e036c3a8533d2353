"""Exception hierarchy for the library.

Every domain error derives from KnotError so the CLI can map them to
exit status 1 uniformly.
"""


class KnotError(Exception):
    """Base class for all domain errors."""


class MalformedCode(KnotError):
    """Input text is not a syntactically valid PD or Gauss code."""


class NonQuadrivalent(MalformedCode):
    """An edge label does not appear exactly twice in a PD code."""


class NonPlanar(KnotError):
    """The rotation system fails the Euler check V - E + F = 2."""


class NonRealizable(KnotError):
    """A Gauss code admits no planar realization."""


class NotComparable(KnotError):
    """Two Haseman circles admit no disjoint planar arrangement."""


class NotAdmissible(KnotError):
    """A circle family leaves a region that is neither TBD nor jewel."""


class NotRational(KnotError):
    """A tangle region is not rational (concentric circles + spire)."""


class DivisionCollapse(KnotError):
    """A continued fraction hit an intermediate zero denominator."""


class IllegalMove(KnotError):
    """A flype move descriptor does not apply to the given diagram."""


class BudgetExceeded(KnotError):
    """A search exceeded its node budget; partial data may be attached."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotAKnot(KnotError):
    """Operation requires a 1-component diagram."""


class NotAlternating(KnotError):
    """Operation requires an alternating diagram."""


class NotATree(KnotError):
    """Atom adjacency data is not a tree."""
