"""Exception hierarchy shared by every module."""


class BraidFreeError(ValueError):
    """Base class for all errors raised by braidfree."""


class MissingPair(BraidFreeError):
    pass


class DuplicatePair(BraidFreeError):
    pass


class NonPositiveMultiplicity(BraidFreeError):
    pass


class IndexOutOfRange(BraidFreeError):
    pass


class MultiplicityTooLarge(BraidFreeError):
    """Raised when an input exceeds the supported vertex count or entry size."""


class SubsetTooSmall(BraidFreeError):
    pass


class NotBalanced(BraidFreeError):
    """The multiplicity lies outside the balanced cone."""


class NotAnn(BraidFreeError):
    """No ANN decomposition was produced.

    ``reason`` distinguishes an input that is simply not decomposable
    (``"not-ann"``) from a stalled repair loop on an input that satisfies the
    four-subset deviation hypothesis (``"algorithm-gap"``).
    """

    def __init__(self, message, reason="not-ann", diagnostic=None):
        super().__init__(message)
        self.reason = reason
        self.diagnostic = diagnostic or {}


class SizeMismatch(BraidFreeError):
    pass


class InstanceTooLarge(BraidFreeError):
    pass


class NotAPermutation(BraidFreeError):
    pass


class TooLarge(BraidFreeError):
    pass


class TooSmall(BraidFreeError):
    pass


class NonPositiveResult(BraidFreeError):
    pass


class NotAFreeVertex(BraidFreeError):
    pass


class InternalInconsistency(RuntimeError):
    """Two routes that must agree produced different answers."""

    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance


class BudgetExceeded(BraidFreeError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class FormatError(BraidFreeError):
    """Malformed JSON input; ``field`` names the offending location."""

    def __init__(self, message, field=None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
