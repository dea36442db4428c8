"""Exception hierarchy shared by all analysis modules."""


class LojError(Exception):
    """Base class for every failure raised by lojparam."""


class DimensionError(LojError, ValueError):
    pass


class ZeroPolynomialError(LojError, ValueError):
    """The polynomial vanishes identically where a nonzero one is required."""


class DegreeError(LojError, ValueError):
    pass


class RootFindingError(LojError, ArithmeticError):
    """The simultaneous root iteration did not reach its tolerance."""


class BoundaryRootError(LojError, ArithmeticError):
    """A root sits too close to a contour; perturb the radius and retry."""


class WindingError(LojError, ArithmeticError):
    """The argument-principle sum is not close to an integer."""


class NotARootError(LojError, ValueError):
    pass


class ProbeInstabilityError(LojError, ArithmeticError):
    """Degree counts disagree across random probes or probe radii."""


class PropernessError(LojError, ArithmeticError):
    """The zero set meets the lateral boundary V x dW of a box."""


class SliceInconsistencyError(LojError, ArithmeticError):
    pass


class FrameError(LojError, ArithmeticError):
    pass


class NonMonicError(LojError, ValueError):
    pass


class PreconditionError(LojError, ValueError):
    pass


class EmptyZeroSetError(LojError, ValueError):
    pass


class InsufficientShellsError(LojError, ValueError):
    pass


class SchemaError(LojError, ValueError):
    pass
