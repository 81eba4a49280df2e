"""
sine-q and cosine-q as Euler infinite products, in the scaled variable x (the argument is pi_q * x).

    sin_q(pi_q x) = pi_q / (1-q) * prod_{n>=1} [1 + (x-1)/n]_{q^n} [1 - x/n]_{q^n}
    cos_q(pi_q x) = prod_{n>=1} [1 + x/(n-1/2)]_{q^(n-1/2)} [1 - x/(n-1/2)]_{q^(n-1/2)}

Both are entire in x; integer x (sine) and half-odd x (cosine) hit a vanishing bracket exactly.
"""
import math
import logging
from functools import lru_cache
from dataclasses import dataclass
import numpy as np
import pandas as pd
from scipy.optimize import minimize_scalar
from umbraq import qcore
from umbraq.bin import products
from umbraq.bin.config import QParam, ToleranceConfig, as_qparam
from umbraq.bin.errors import ConfigError, ConvergenceError, SearchFailure


logger = logging.getLogger(__name__)



@dataclass(frozen=True)
class TrigProductConfig:
    """
    Truncation settings for the sine-q and cosine-q products.

    Args:
        max_factors (int): Cap on directly multiplied factors. Defaults to 100 000.
        factor_tol (float): Accepted relative size of the summed product tail. Defaults to 1e-13.
    """
    max_factors: int = 100_000
    factor_tol: float = 1e-13

    def __post_init__(self):
        if int(self.max_factors) != self.max_factors or self.max_factors <= 0:
            raise ConfigError(f"max_factors must be a positive integer, got {self.max_factors!r}")
        if not self.factor_tol > 0:
            raise ConfigError(f"factor_tol must be positive, got {self.factor_tol!r}")

    def tolerance(self) -> ToleranceConfig:
        return ToleranceConfig(rel_tol=self.factor_tol, max_product_factors=int(self.max_factors))



@dataclass(frozen=True)
class ExtremumRecord:
    """The extremum of sine-q between the zeros k and k+1, and sine-q at the midpoint k + 1/2."""
    k: int
    location: float
    value: float
    half_integer_value: float



def sin_q_scaled(x: float, q: QParam | float, cfg: TrigProductConfig | None = None) -> float:
    """
    sin_q(pi_q x) from its Euler product.

    Example:
        >>> sin_q_scaled(1.0, 0.5)
        0.0
    """
    q = as_qparam(q).q
    cfg = cfg or TrigProductConfig()
    x = float(x)
    product = __checked_product([x, 1.0 - x, 1.0], q, cfg)
    if product.sign == 0.0:
        return 0.0
    return __pi_q(q) / (1.0 - q) * product.value



def cos_q_scaled(x: float, q: QParam | float, cfg: TrigProductConfig | None = None) -> float:
    """cos_q(pi_q x) from its Euler product; cos_q(0) = 1."""
    q = as_qparam(q).q
    cfg = cfg or TrigProductConfig()
    x = float(x)
    product = __checked_product([0.5 + x, 0.5 - x, 0.5], q, cfg)
    return 0.0 if product.sign == 0.0 else product.value



def sin_q_reflection(x: float, q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """sin_q(pi_q x) = pi_q / (qGamma(x) qGamma(1-x)); raises PoleError at integers."""
    return qcore.pi_q(q, tol) / (qcore.q_gamma(x, q, tol).value * qcore.q_gamma(1.0 - x, q, tol).value)



def cos_q_reflection(x: float, q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """cos_q(pi_q x) = pi_q / (qGamma(1/2 + x) qGamma(1/2 - x)); raises PoleError at half-odd x."""
    return qcore.pi_q(q, tol) / (qcore.q_gamma(0.5 + x, q, tol).value * qcore.q_gamma(0.5 - x, q, tol).value)



def sin_cos_shift_residual(x: float, q: QParam | float, cfg: TrigProductConfig | None = None) -> float:
    """sin_q(pi_q (x + 1/2)) - cos_q(pi_q x), zero up to rounding."""
    return sin_q_scaled(float(x) + 0.5, q, cfg) - cos_q_scaled(x, q, cfg)



def extremum_scan(q: QParam | float, k_max: int, cfg: TrigProductConfig | None = None) -> list[ExtremumRecord]:
    """
    Locates the extremum of sine-q inside every lobe (k, k+1), k = 0 ... k_max, by golden-section search.

    Args:
        q (QParam | float): The deformation parameter.
        k_max (int): The last lobe, >= 1.
        cfg (TrigProductConfig, optional): Product truncation settings.

    Returns:
        list[ExtremumRecord]: One record per lobe.

    Raises:
        SearchFailure: If the numeric derivative does not change sign inside a lobe, or if the
            extremum magnitude decreases from one lobe to the next.

    Notes:
        - sin_q(pi_q (1 + y)) = -q**-y sin_q(pi_q y), so for k >= 1 the extremum drifts away from
          k + 1/2 towards k + 1; the location is reported, half_integer_value carries sine-q at k + 1/2.
    """
    q = as_qparam(q)
    if isinstance(k_max, bool) or int(k_max) != k_max or k_max < 1:
        raise ValueError(f"k_max must be an integer >= 1, got {k_max!r}")
    cfg = cfg or TrigProductConfig()
    inset = 1e-3
    step = 1e-6

    def slope(t: float) -> float:
        return (sin_q_scaled(t + step, q, cfg) - sin_q_scaled(t - step, q, cfg)) / (2.0 * step)

    records = []
    for k in range(int(k_max) + 1):
        lower, upper = k + inset, k + 1.0 - inset
        if slope(lower) * slope(upper) >= 0.0:
            raise SearchFailure(f"no extremum bracketed in ({k}, {k + 1}) at q = {q.q}")
        midpoint = sin_q_scaled(k + 0.5, q, cfg)
        orientation = math.copysign(1.0, midpoint)
        try:
            found = minimize_scalar(lambda t: -orientation * sin_q_scaled(t, q, cfg),
                                    bracket=(lower, k + 0.5, upper), method="golden", tol=1e-10)
        except ValueError as e:
            raise SearchFailure(f"golden-section search failed in ({k}, {k + 1}): {e}") from e
        record = ExtremumRecord(k, float(found.x), float(-orientation * found.fun), midpoint)
        if records and abs(record.value) < abs(records[-1].value) * (1.0 - 1e-12):
            raise SearchFailure(f"extremum magnitude decreased between lobes {k - 1} and {k}")
        logger.debug("lobe %d: extremum %.12g at %.10f", k, record.value, record.location)
        records.append(record)
    return records



def parametric_curve(q: QParam | float, x_min: float, x_max: float, steps: int,
                     cfg: TrigProductConfig | None = None) -> pd.DataFrame:
    """
    Samples (cos_q(pi_q x), sin_q(pi_q x)) at steps + 1 evenly spaced x.

    Returns:
        pd.DataFrame: Columns x, cos_q, sin_q.
    """
    q = as_qparam(q)
    x = __sample_points(x_min, x_max, steps)
    return pd.DataFrame({
        "x": x,
        "cos_q": [cos_q_scaled(t, q, cfg) for t in x],
        "sin_q": [sin_q_scaled(t, q, cfg) for t in x],
    })



def trig_table(q_list, x_min: float, x_max: float, steps: int, cfg: TrigProductConfig | None = None) -> pd.DataFrame:
    """
    sine-q and cosine-q against x for several q, one row per sample.

    Returns:
        pd.DataFrame: Column x, then sin_q(q=...) and cos_q(q=...) for each q in order.
    """
    params = [as_qparam(q) for q in q_list]
    x = __sample_points(x_min, x_max, steps)
    table = {"x": x}
    for q in params:
        table[f"sin_q(q={q.q:g})"] = [sin_q_scaled(t, q, cfg) for t in x]
        table[f"cos_q(q={q.q:g})"] = [cos_q_scaled(t, q, cfg) for t in x]
    return pd.DataFrame(table)



# ---- Private Functions ----

@lru_cache(maxsize=32)
def __pi_q(q: float) -> float:
    return qcore.pi_q(q)



def __checked_product(offsets: list[float], q: float, cfg: TrigProductConfig) -> products.QProduct:
    product = products.q_product(offsets, [1.0, 1.0, -2.0], q, cfg.tolerance())
    if product.sign != 0.0 and product.relative_bound > cfg.factor_tol:
        raise ConvergenceError(f"product tail bound {product.relative_bound:.3e} above factor_tol")
    return product



def __sample_points(x_min: float, x_max: float, steps: int) -> np.ndarray:
    if isinstance(steps, bool) or int(steps) != steps or steps < 2:
        raise ValueError(f"steps must be an integer >= 2, got {steps!r}")
    if not x_max > x_min:
        raise ValueError(f"need x_min < x_max, got {x_min!r}, {x_max!r}")
    return np.linspace(float(x_min), float(x_max), int(steps) + 1)
