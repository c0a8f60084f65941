"""Exception hierarchy shared by the whole package.

The split mirrors the exit codes of the command line tool: bad input data
(unreadable files, malformed JSON, unparseable field strings) is an
InputError, a mathematically well-formed request that the library refuses
(matrix is not an involution, context is not friendly, question the theory
leaves open) is a PreconditionError, and a violated internal invariant is
an InternalError.  Library code raises these; the CLI maps them to 1, 2
and 3 respectively.
"""


class SoinvError(Exception):
    """Base class for everything raised on purpose by this package."""


class InputError(SoinvError):
    """Malformed input: bad JSON, unknown field string, wrong dimensions."""

    exit_code = 1


class PreconditionError(SoinvError):
    """The input parses fine but violates a mathematical precondition."""

    exit_code = 2


class NotAnInvolutionError(PreconditionError):
    """The matrix does not square to a scalar multiple of the identity."""


class IdentityAutomorphismError(PreconditionError):
    """The matrix is +-I, so conjugation by it is the identity map."""


class UnfriendlyContextError(PreconditionError):
    """The bilinear form fails the friendliness condition the
    normalization argument depends on, so we refuse to proceed."""


class UnsupportedFieldError(PreconditionError):
    """The requested operation is not available over this ground field."""


class UndecidedError(PreconditionError):
    """The question is one the underlying theory leaves open, for example
    SO-level isomorphy of type 2 involutions.  We refuse to guess."""


class InternalError(SoinvError):
    """A self-check failed.  Always a bug, never a user error."""

    exit_code = 3
