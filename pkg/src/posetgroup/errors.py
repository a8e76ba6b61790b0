"""Exception hierarchy shared by the whole package.

Every exception carries a stable machine-greppable ``code`` used by the
CLI as the prefix of its one-line stderr diagnostic.
"""


class PosetGroupError(Exception):
    code = "E_INTERNAL"


class DuplicateElementError(PosetGroupError):
    code = "E_DUPLICATE_ELEMENT"


class UnknownElementError(PosetGroupError):
    code = "E_UNKNOWN_ELEMENT"


class CycleError(PosetGroupError):
    """Antisymmetry would fail: the input pairs contain a nontrivial cycle."""

    code = "E_CYCLE"


class HostMismatchError(PosetGroupError):
    """Two group elements from different posets were combined."""

    code = "E_HOST_MISMATCH"


class ExpressionSyntaxError(PosetGroupError):
    code = "E_SYNTAX"


class EmptyPosetError(PosetGroupError):
    code = "E_EMPTY_POSET"


class NotOrderUnitError(PosetGroupError):
    code = "E_NOT_ORDER_UNIT"


class NotInConeError(PosetGroupError):
    code = "E_NOT_IN_CONE"


class SumMismatchError(PosetGroupError):
    code = "E_SUM_MISMATCH"


class NotInterpolableError(PosetGroupError):
    """A precondition x_a <= y_b of interpolation fails."""

    code = "E_NOT_INTERPOLABLE"


class SizeTooLargeError(PosetGroupError):
    code = "E_SIZE_TOO_LARGE"


class InternalInvariantViolation(PosetGroupError):
    """A state the algorithm's case analysis proves unreachable was reached."""

    code = "E_INTERNAL"
