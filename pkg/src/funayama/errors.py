"""Exception hierarchy shared by all modules."""


class FunayamaError(Exception):
    """Base class for every error raised by this package."""


class DuplicateName(FunayamaError):
    pass


class UnknownElement(FunayamaError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CycleDetected(FunayamaError):
    """The cover relation does not close up to an antisymmetric order."""


class NotBounded(FunayamaError):
    pass


class DegeneratePoset(FunayamaError):
    """A bounded poset with 0 = 1 has an empty pair space."""


class NotALattice(FunayamaError):
    pass


class UnknownPair(FunayamaError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class SpaceMismatch(FunayamaError, ValueError):
    """Two pair sets (or a pair set and a space) do not share a pair space."""


class ForeignElement(FunayamaError, ValueError):
    """An operand is not a member of the algebra it is used with."""


class UnknownName(FunayamaError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class LatticeSyntaxError(FunayamaError, ValueError):
    """Malformed lattice file. ``context`` names the line or field at fault."""

    def __init__(self, message, context=None):
        self.context = context
        super().__init__(f"{context}: {message}" if context else message)


class CapacityExceeded(FunayamaError):
    """A computation would exceed its configured budget.

    ``stage`` names the pipeline step that overflowed.
    """

    def __init__(self, message, stage=None):
        self.stage = stage
        super().__init__(f"[{stage}] {message}" if stage else message)
