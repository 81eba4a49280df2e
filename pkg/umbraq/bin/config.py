import os
import logging
from dataclasses import dataclass, replace
from umbraq.bin.errors import QParamError, ConfigError
from umbraq.utilities import constants


logger = logging.getLogger(__name__)



@dataclass(frozen=True)
class QParam:
    """
    The deformation parameter q, validated on construction.

    Args:
        q (float): The deformation parameter, 0 < q < 1.
        q_max (float, optional): Upper guard for q. Products converge like q**n, so values
            closer to 1 than q_max are refused. Defaults to 0.9999.

    Raises:
        QParamError: If q is not finite or lies outside (0, q_max].
    """
    q: float
    q_max: float = constants.Q_MAX_DEFAULT

    def __post_init__(self):
        q = self.q
        if isinstance(q, bool) or not isinstance(q, (int, float)):
            try:
                q = float(q)
            except (TypeError, ValueError):
                raise QParamError(f"q must be a real number, got {self.q!r}") from None
            object.__setattr__(self, "q", q)
        if not (0.0 < q < 1.0):
            raise QParamError(f"q must satisfy 0 < q < 1, got {q!r}")
        if not (0.0 < self.q_max < 1.0):
            raise QParamError(f"q_max must satisfy 0 < q_max < 1, got {self.q_max!r}")
        if q > self.q_max:
            raise QParamError(f"q = {q!r} exceeds q_max = {self.q_max!r}")

    def __float__(self) -> float:
        return float(self.q)



def as_qparam(q: "QParam | float") -> QParam:
    """Validates a plain float into a QParam, passing QParam instances through."""
    if isinstance(q, QParam):
        return q
    return QParam(q)



@dataclass(frozen=True)
class ToleranceConfig:
    """
    Tolerances and truncation caps for every product, series and quadrature.

    Args:
        rel_tol (float): Relative tolerance. Defaults to 1e-12.
        abs_tol (float): Absolute tolerance. Defaults to 1e-14.
        max_product_factors (int): Cap on directly multiplied product factors. Defaults to 200 000.
        max_series_terms (int): Cap on summed series terms. Defaults to 10 000.
        max_evaluations (int): Integrand evaluation budget of one adaptive quadrature. Defaults to 200 000.
    """
    rel_tol: float = constants.REL_TOL_DEFAULT
    abs_tol: float = constants.ABS_TOL_DEFAULT
    max_product_factors: int = constants.MAX_PRODUCT_FACTORS
    max_series_terms: int = constants.MAX_SERIES_TERMS
    max_evaluations: int = constants.MAX_EVALUATIONS

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol"):
            value = getattr(self, name)
            if not (value > 0.0) or value != value:
                raise ConfigError(f"{name} must be strictly positive, got {value!r}")
        for name in ("max_product_factors", "max_series_terms", "max_evaluations"):
            value = getattr(self, name)
            if int(value) != value or value <= 0:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")

    def with_overrides(self, **overrides) -> "ToleranceConfig":
        """Returns a copy with the non-None overrides applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **changes) if changes else self



def get_default_tolerance() -> ToleranceConfig:
    """
    Builds the default ToleranceConfig.

    The environment variable UMBRAQ_MAX_FACTORS, when set, overrides max_product_factors.

    Raises:
        ConfigError: If UMBRAQ_MAX_FACTORS is not a positive integer.
    """
    raw = os.environ.get(constants.ENV_MAX_FACTORS)
    if raw is None or not raw.strip():
        return ToleranceConfig()
    try:
        max_factors = int(raw)
    except ValueError:
        raise ConfigError(f"{constants.ENV_MAX_FACTORS} must be an integer, got {raw!r}") from None
    logger.debug("max_product_factors overridden from environment: %d", max_factors)
    return ToleranceConfig(max_product_factors=max_factors)



def resolve_tolerance(tol: ToleranceConfig | None) -> ToleranceConfig:
    return get_default_tolerance() if tol is None else tol
