"""Exception types shared across the package.

Every exception carries a short machine-readable ``code`` used by the
command-line front end when reporting failures as JSON.
"""


class WrjiError(Exception):
    code = "computation-failed"


class SurvivalZeroError(WrjiError, ValueError):
    code = "survival-zero-at-t"


class DivergentIntegralError(WrjiError, ArithmeticError):
    code = "divergent-integral"


class QuadratureError(WrjiError, RuntimeError):
    """Adaptive integration did not reach the requested tolerance.

    The best available estimate is kept in ``result``.
    """

    code = "quadrature-failed"

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NoDataBeyondError(WrjiError, ValueError):
    code = "no-data-beyond-t"


class DegenerateSampleError(WrjiError, ValueError):
    code = "degenerate-sample"


class UnknownFamilyError(WrjiError, ValueError):
    code = "unknown-family"


class FitError(WrjiError, RuntimeError):
    code = "fit-failed"


class DataFileError(WrjiError, OSError):
    code = "unreadable-data"
