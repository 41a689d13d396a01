"""Exception hierarchy shared by all ocpoly modules."""


class OcpolyError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(OcpolyError):
    """Malformed octonion, scalar or polynomial input."""


class InvalidInput(OcpolyError):
    """Precondition violation (zero polynomial, params mismatch, ...)."""


class UnsupportedDegree(OcpolyError):
    """Exact-mode central root finding is limited to low degrees."""


class NoConvergence(OcpolyError):
    """The simultaneous-iteration solver hit its iteration cap."""


class NotInvertible(OcpolyError):
    """Inversion of a zero or isotropic element."""


class NotConjugate(OcpolyError):
    """Trace/norm mismatch, or a central element conjugated to a different one."""


class WitnessFailure(OcpolyError):
    """No anisotropic conjugating element found; should not happen over a
    division algebra, so this signals a genuine bug or an isotropic algebra."""


class DegenerateCommutative(OcpolyError):
    """Both generators are central; no quaternion subalgebra is determined."""


class NotInRMR(OcpolyError):
    """Element does not belong to any companion root class."""


class WholeClass(OcpolyError):
    """The linear reduction vanished: every class member is a root, there is
    no distinguished single point."""


class ModeMismatch(OcpolyError):
    """Operation requires the other scalar mode (exact vs. real)."""


class ResourceLimit(OcpolyError):
    """Composition degree cap exceeded."""


class NotAFixedPoint(OcpolyError):
    """classify_fixed called on a point that f does not fix."""


class OrderMismatch(OcpolyError):
    """Claimed pseudo-period does not match the detected one."""


class InternalError(OcpolyError):
    """Arithmetic self-check failed (e.g. non-central companion coefficient)."""
