"""Exception hierarchy shared by all modules."""


class PolytopeError(Exception):
    """Base class for every error raised by polytwo."""


class MalformedInput(PolytopeError):
    pass


class NotComparable(PolytopeError):
    pass


class BadLetter(PolytopeError):
    pass


class NoPath(PolytopeError):
    pass


class BadRank(PolytopeError):
    pass


class NotInParent(PolytopeError):
    pass


class GroupTooLarge(PolytopeError):
    pass


class TooManyOrbits(PolytopeError):
    pass


class NotTwoOrbit(PolytopeError):
    pass


class NotAChain(PolytopeError):
    pass


class MissingAutomorphism(PolytopeError):
    pass


class FormulaMismatch(PolytopeError):
    pass


class CaseUndefined(PolytopeError):
    pass


class ReconstructionMismatch(PolytopeError):
    pass


class BadParameter(PolytopeError):
    pass


class DegenerateQuotient(PolytopeError):
    pass


class ApfError(PolytopeError):
    """Parse failure in APF text; ``line`` is 1-based."""

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ApfSyntaxError(ApfError):
    pass


class UnknownFaceId(ApfError):
    pass


class RankMismatch(ApfError):
    pass
