"""Exception hierarchy shared by every umbraq module."""



class UmbraqError(Exception):
    """Base class of all umbraq failures."""



class QParamError(UmbraqError, ValueError):
    """The deformation parameter is outside (0, q_max]."""



class ConfigError(UmbraqError, ValueError):
    """A tolerance, cap or other configuration value is invalid."""



class PoleError(UmbraqError, ValueError):
    """A Gamma-type function was asked for its value at a pole."""

    def __init__(self, x: float, message: str | None = None):
        self.x = x
        super().__init__(message or f"pole at x = {x!r}")



class ConvergenceError(UmbraqError, ArithmeticError):
    """A product or a series hit its truncation cap before reaching the tolerance."""



class SeriesDivergence(ConvergenceError):
    """A series failed the ratio test, or was evaluated outside its convergence gate."""



class NonConvergence(ConvergenceError):
    """An adaptive quadrature stalled above its tolerance.

    The partial result is kept on the exception so callers can still report it.
    """

    def __init__(self, message: str, result=None):
        self.result = result
        super().__init__(message)



class TailModelViolation(UmbraqError):
    """The empirical decay of an integrand disagrees with its declared tail model."""



class UmbralEvaluationError(UmbraqError):
    """An umbral moment could not be evaluated (usually a q-Gamma pole)."""



class SearchFailure(UmbraqError):
    """An extremum search found no bracket, or the extrema broke their ordering."""



class UnknownFunction(UmbraqError, KeyError):
    """The requested name is not in the evaluation registry."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown function"
