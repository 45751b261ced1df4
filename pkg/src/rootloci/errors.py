"""Exception types shared across the package."""


class RootLociError(Exception):
    """Base class for all package-specific errors."""


class DegreeMismatch(RootLociError):
    """Operands have incompatible degrees."""


class AmbiguousStructure(RootLociError):
    """Root clustering is not stable under doubling the tolerance."""


class NotHypersurface(RootLociError):
    """The dual variety is not a hypersurface (some part equals 1)."""


class NotHook(RootLociError):
    """Partition is not a hook with largest part >= 2."""


class SizeMismatch(RootLociError):
    """Partitions of different integers."""


class OutOfTable(RootLociError):
    """Partition outside the embedded census (n > 7)."""


class NotHypersurfaceCase(RootLociError):
    """Secant variety hypothesis n = k(n-a+2) fails."""


class OutOfRange(RootLociError):
    """Argument outside the supported range."""


class CertificationFailure(RootLociError):
    """Floating-point roots disagree with the exact Sturm count."""


class DegenerateKernel(RootLociError):
    """Kernel dimension exceeds 1 at the working tolerance."""


class NumericalFailure(RootLociError):
    """Interpolation or conditioning failure."""


class FactorizationMismatch(RootLociError):
    """Determinant factorization residual above tolerance."""


class DegenerateInput(RootLociError):
    """Input is too special for the solver (e.g. L^(a-1)(h) = 0)."""


class NotCritical(RootLociError):
    """No left kernel at the requested root; the point is not critical."""


class NoCriticalPointFound(RootLociError):
    """Multi-start search converged to no critical point."""


class NotConormal(RootLociError):
    """Pair (f, g) fails the conormal (apolarity) verification."""


class NotOnDual(RootLociError):
    """Additive decomposition system is inconsistent; g is off the dual."""


class SubgenericRank(RootLociError):
    """Catalecticant is rank deficient: complex rank below generic."""

    def __init__(self, rank, message=None):
        self.rank = rank
        super().__init__(message or f"catalecticant rank {rank} below generic")


class DegeneratePencil(RootLociError):
    """The whole pencil lies inside the discriminant."""


class AmbiguousBoundary(RootLociError):
    """Multiplicity pattern at the transition root is ambiguous."""
