"""Exception hierarchy.

The CLI maps :class:`InvalidInput` to exit code 2 and :class:`Unsupported`
to exit code 3; everything else is a bug.
"""


class LlsGeomError(Exception):
    pass


class InvalidInput(LlsGeomError, ValueError):
    """The caller handed us something outside an operation's domain."""


class Unsupported(LlsGeomError):
    """Well-formed input for which the requested quantity is not computed."""


class ConsistencyError(LlsGeomError, AssertionError):
    """An internal self-check failed (should never happen)."""


class MixedRadicand(InvalidInput):
    pass


class RationalInput(InvalidInput):
    pass


class NonPositiveDiscriminant(InvalidInput):
    pass


class NonIntegerCoefficients(InvalidInput):
    pass


class EdgeThroughOrigin(InvalidInput):
    def __init__(self, k, msg=None):
        self.k = k
        super().__init__(msg or f"edge {k} lies on a line through the origin")


class SignatureUndefined(InvalidInput):
    pass


class NotUnimodular(InvalidInput):
    pass


class NotOnKernel(InvalidInput):
    pass


class NotFBrokenLine(InvalidInput):
    pass


class BoundaryVertex(InvalidInput):
    pass


class DegenerateAngle(InvalidInput):
    pass


class EmptyAngle(InvalidInput):
    pass


class EmptyScene(InvalidInput):
    pass


class NonConvergent(Unsupported):
    pass


class DegeneratePeriod(Unsupported):
    pass


class SquareDiscriminant(Unsupported):
    pass


class SingularStep(ConsistencyError):
    pass


class DegenerateSplit(ConsistencyError):
    pass


class ZeroDenominator(ConsistencyError):
    pass
