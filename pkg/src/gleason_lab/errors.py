"""Exception types shared across the package."""


class GleasonLabError(Exception):
    """Base class for all errors raised by gleason_lab."""


class AlgebraMismatch(GleasonLabError):
    """Operands carry different scalar algebras, or an operation needs a specific one."""


class DegenerateInput(GleasonLabError):
    """Input vectors are numerically rank deficient."""


class NotHermitian(GleasonLabError):
    """Operator expected to equal its adjoint does not, beyond tolerance."""


class NotPositive(GleasonLabError):
    """Operator expected to be positive has an eigenvalue below -tolerance."""


class NotUnitary(GleasonLabError):
    """Operator expected to be unitary fails U*U = I beyond tolerance."""


class NotAFrameFunction(GleasonLabError):
    """Unit-vector oracle violates a frame-function requirement (phase invariance,
    basis normalization, or agreement with its quadratic form)."""


class InvalidWeights(GleasonLabError):
    """Convex weights are negative or do not sum to one."""


class ConvergenceFailure(GleasonLabError):
    """An iterative routine failed to reach its target residual."""
