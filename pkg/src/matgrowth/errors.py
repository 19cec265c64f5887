"""Exception hierarchy shared across the package.

Parse/format problems are ValueErrors; violated analysis preconditions get
their own family so the CLI can map them to a distinct exit code.
"""


class MatrixFormatError(ValueError):
    """Malformed matrix text, or a matrix outside the supported family."""


class SizeMismatchError(ValueError):
    """Operands whose sides do not match."""


class PreconditionError(Exception):
    """An operation was called outside its stated precondition."""


class P1ViolationError(PreconditionError):
    """Condition P1 fails: some entered vertex has no outgoing edge.

    ``witness`` is the offending 1-based index (nonzero column, zero row).
    """

    def __init__(self, witness: int):
        super().__init__(f"condition P1 fails at index {witness} "
                         f"(column {witness} is nonzero but row {witness} is zero)")
        self.witness = witness


class P2ViolationError(PreconditionError):
    """Condition P2 fails: some vertex carries two distinct closed walks
    of equal length, so a diagonal power entry exceeds 1."""


class UnboundedClassError(PreconditionError):
    """A bounded-class-only operation was called on a matrix whose norm
    sequence is unbounded."""


class NotInCycleSetError(PreconditionError):
    """The requested vertex lies on no directed cycle."""


class CanonicalSizeLimitError(PreconditionError):
    """Canonicalization requested above the configured size limit."""


class WordCapExceededError(PreconditionError):
    """Materializing a word set would exceed the configured cap.

    ``count`` carries the exact cardinality (computed from matrix powers)
    so callers can still report it without enumerating.
    """

    def __init__(self, count: int, cap: int):
        super().__init__(f"word set has {count} elements, above the cap of {cap}")
        self.count = count
        self.cap = cap
