"""Exception hierarchy shared by all modules."""


class MixedZMCError(Exception):
    """Base class for every error raised by this package."""


class OutOfRange(MixedZMCError, ValueError):
    """A numeric argument lies outside its documented range."""


class NullAxis(MixedZMCError, ValueError):
    """A reflection axis has a lightlike direction."""


class NullNormal(MixedZMCError, ValueError):
    """A reflection plane has a lightlike normal."""


class BranchPointProximity(MixedZMCError):
    """A path on the Riemann surface came too close to a branch point."""


class PoleInput(MixedZMCError, ValueError):
    """Evaluation requested at a pole of the integrand."""


class QuadratureFailure(MixedZMCError):
    """Adaptive quadrature could not meet its tolerance within budget."""


class CrossCheckFailure(MixedZMCError):
    """Two independent numerical evaluations of one quantity disagree."""


class DegenerateLattice(MixedZMCError):
    """Lattice generators are (numerically) linearly dependent."""


class CriterionViolation(MixedZMCError):
    """A numerical check contradicts a singularity classification."""


class RootFindFailure(MixedZMCError):
    """A scalar root finder exhausted its iteration budget."""


class SeamMismatch(MixedZMCError):
    """Two mesh rims meant to be identified are not congruent."""


class WeldMismatch(MixedZMCError):
    """Copies of a piece failed to weld along a shared boundary."""


class NotClosed(MixedZMCError):
    """A mesh remained open after identification modulo a lattice."""


class NoRootFound(MixedZMCError):
    """A parameter search did not locate a zero of its residual."""
