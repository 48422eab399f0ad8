"""Exception hierarchy. The entry script maps each family onto an exit code."""


class GrothError(Exception):
    """Base class for every error raised by grothfock_lib."""
    exit_code = 1


class ParseError(GrothError):
    """Malformed user input: shapes, caps, suite names."""
    exit_code = 2


class PreconditionError(GrothError):
    """An operation was called outside its documented domain."""
    exit_code = 3


class CapsError(PreconditionError):
    """Truncation caps are too small, not injective, or disagree."""


class NonSymmetricError(PreconditionError):
    """A polynomial handed to from_polynomial is not symmetric."""


class DimensionError(PreconditionError):
    """Matrix shape or sequence length mismatch."""


class UnsupportedWordError(PreconditionError):
    """An operator word the fermion engine cannot evaluate."""


class InexactDivisionError(GrothError):
    """Exact division left a nonzero remainder."""


class RouteMismatchError(GrothError):
    """Two computations that must agree did not."""
