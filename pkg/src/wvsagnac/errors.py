"""Exception types shared across the package.

Generic bad-input validation raises plain ValueError; these subclasses mark
the failure modes callers are expected to branch on (the CLI maps them to
distinct exit codes).
"""


class NearOrthogonalSelection(ValueError):
    """Pre- and post-selection are close enough to orthogonal that the
    surviving intensity is effectively zero and the weak value diverges."""


class DegenerateInput(ValueError):
    """A spectrum with no usable intensity was passed to an estimator."""


class FitFailure(RuntimeError):
    """The Gaussian fit did not converge within the iteration budget."""

    def __init__(self, message: str, residual_norm: float | None = None,
                 iterations: int | None = None):
        super().__init__(message)
        self.residual_norm = residual_norm
        self.iterations = iterations
