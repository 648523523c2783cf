"""Exception types raised by jmatrix_waves."""


class ConvergenceError(RuntimeError):
    """A series or iteration failed to converge within its term budget."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature exhausted its subdivisions before meeting tolerance."""


class TurningPointError(ValueError):
    """The series is truncated before its basis reaches the evaluation point."""


class IllConditionedFitError(ValueError):
    """The least-squares normal matrix is too ill-conditioned to trust."""
