"""
Infinite q-products.

Every product here has factors of the form 1 - z*q**n. The first factors (while |z|*q**n > 1/2)
are multiplied in log space one by one; the remaining infinite tail is summed in closed form through
    sum_{n>=N} log(1 - z*q**n) = -sum_{k>=1} (z*q**N)**k / (k*(1 - q**k)),
which converges at least like 2**-k. This keeps the factor count at about log(2)/(1-q) instead of
growing with the requested tolerance.
"""
import math
import logging
from functools import lru_cache
from dataclasses import dataclass
import numpy as np
from umbraq.bin.config import ToleranceConfig
from umbraq.bin.errors import ConvergenceError, PoleError
from umbraq.utilities import constants


logger = logging.getLogger(__name__)



@dataclass(frozen=True)
class QProduct:
    """Log-magnitude and sign of an infinite product, with its truncation record."""
    log_abs: float
    sign: float
    factors_used: int
    tail_terms: int
    tail_bound: float

    @property
    def value(self) -> float:
        if self.sign == 0.0:
            return 0.0
        if self.log_abs > 709.0:
            return math.copysign(math.inf, self.sign)
        return self.sign * math.exp(self.log_abs)

    @property
    def relative_bound(self) -> float:
        """Bound on the relative error of value caused by the tail summation."""
        return math.expm1(self.tail_bound)



def q_product(offsets, exponents, q: float, tol: ToleranceConfig) -> QProduct:
    """
    Evaluates prod_{n>=0} prod_i (1 - q**(n + a_i))**e_i.

    Args:
        offsets (sequence of float): The offsets a_i.
        exponents (sequence of float): The exponents e_i; they must sum to zero so the product converges.
        q (float): The base, 0 < q < 1.
        tol (ToleranceConfig): Supplies max_product_factors and max_series_terms.

    Returns:
        QProduct: sign 0 marks an exact zero (some n + a_i == 0 with e_i > 0).

    Raises:
        PoleError: If a vanishing factor carries a negative exponent.
        ConvergenceError: If more than max_product_factors factors would be needed.
    """
    a = np.atleast_1d(np.asarray(offsets, dtype=float))
    e = np.atleast_1d(np.asarray(exponents, dtype=float))
    if a.shape != e.shape:
        raise ValueError("offsets and exponents must have the same length")
    if abs(float(e.sum())) > 1e-12:
        raise ValueError("exponents must sum to zero for the product to converge")

    q = float(q)
    lnq = math.log(q)
    a_min = float(a.min())
    n_direct = max(0, math.ceil(math.log(constants.PRODUCT_DIRECT_THRESHOLD) / lnq - a_min))
    if n_direct > tol.max_product_factors:
        raise ConvergenceError(f"q = {q} needs {n_direct} product factors, cap is {tol.max_product_factors}")

    sign = 1.0
    log_direct = 0.0
    if n_direct:
        n = np.arange(n_direct, dtype=float)[:, None]
        factors = -np.expm1((n + a) * lnq)
        zeros = factors == 0.0
        if zeros.any():
            columns = np.nonzero(zeros)[1]
            if np.any(e[columns] < 0):
                raise PoleError(float(a[columns[0]]), "product has a vanishing factor in its denominator")
            return QProduct(-math.inf, 0.0, n_direct, 0, 0.0)
        negative = factors < 0.0
        if negative.any():
            power = float((negative * e).sum())
            if power != round(power):
                raise ValueError("negative factor raised to a non-integer exponent")
            sign = -1.0 if int(round(power)) % 2 else 1.0
        log_direct = float((np.log(np.abs(factors)) @ e).sum())

    ratio = q ** (n_direct + a_min)
    log_tail, tail_terms, bound = __log_tail(np.full(a.shape, 1.0), a + n_direct, e, lnq, ratio, tol)
    logger.debug("q_product q=%s: %d direct factors, %d tail terms", q, n_direct, tail_terms)
    return QProduct(log_direct + log_tail, sign, n_direct, tail_terms, bound)



def log_qpochhammer(z: float, q: float, tol: ToleranceConfig) -> tuple[float, float]:
    """
    Returns (log|(z; q)_inf|, sign) for real z, where (z; q)_inf = prod_{n>=0} (1 - z*q**n).

    The sign is 0 when some factor vanishes exactly.
    """
    q = float(q)
    z = float(z)
    if z == 0.0:
        return 0.0, 1.0
    lnq = math.log(q)
    n_direct = max(0, math.ceil(math.log(constants.PRODUCT_DIRECT_THRESHOLD / abs(z)) / lnq))
    if n_direct > tol.max_product_factors:
        raise ConvergenceError(f"(z; q) product needs {n_direct} factors, cap is {tol.max_product_factors}")

    sign = 1.0
    log_direct = 0.0
    if n_direct:
        factors = 1.0 - z * np.exp(np.arange(n_direct) * lnq)
        if np.any(factors == 0.0):
            return -math.inf, 0.0
        if np.count_nonzero(factors < 0.0) % 2:
            sign = -1.0
        log_direct = float(np.log(np.abs(factors)).sum())

    ratio = abs(z) * q ** n_direct
    log_tail, _, _ = __log_tail(np.array([z]), np.array([float(n_direct)]), np.array([1.0]), lnq, ratio, tol)
    return log_direct + log_tail, sign



@lru_cache(maxsize=64)
def euler_coefficients(q: float) -> tuple[np.ndarray, np.ndarray, float]:
    """
    Coefficients of Euler's expansion (q*t; q)_inf = sum_j c_j t**j, c_j = (-1)**j q**(j(j+1)/2) / (q; q)_j.
    Returns (log|c_j|, sign(c_j), log (q; q)_inf) for every j whose |c_j| is representable as a double.
    """
    lnq = math.log(q)
    log_qq_inf, _ = log_qpochhammer(q, q, ToleranceConfig(max_product_factors=10_000_000))
    j_max = int(math.ceil(math.sqrt(2.0 * (800.0 + abs(log_qq_inf)) / abs(lnq)))) + 2
    j_max = min(j_max, constants.EULER_MAX_TERMS)
    j = np.arange(j_max, dtype=float)
    log_qq_j = np.concatenate(([0.0], np.cumsum(np.log(-np.expm1(np.arange(1, j_max) * lnq)))))
    log_c = 0.5 * j * (j + 1.0) * lnq - log_qq_j
    keep = log_c > -745.0
    signs = np.where(j.astype(int) % 2 == 0, 1.0, -1.0)
    return log_c[keep], signs[keep], log_qq_inf



# ---- Private Functions ----

def __log_tail(z: np.ndarray, start: np.ndarray, exponents: np.ndarray, lnq: float,
               ratio: float, tol: ToleranceConfig) -> tuple[float, int, float]:
    """sum_i e_i * sum_{n>=0} log(1 - z_i*q**(n + start_i)) through the k-series; ratio bounds |z_i|*q**start_i."""
    if ratio == 0.0:
        return 0.0, 0, 0.0
    terms_needed = math.ceil(math.log(constants.LOG_TAIL_TARGET) / math.log(ratio))
    terms_needed = max(1, min(terms_needed, tol.max_series_terms))
    k = np.arange(1, terms_needed + 1, dtype=float)
    base = z * np.exp(start * lnq)
    powers = np.power.outer(base, np.arange(1, terms_needed + 1)).T
    series = (powers @ exponents) / (k * -np.expm1(k * lnq))
    log_tail = -float(series.sum())
    kn = terms_needed + 1
    bound = float(np.abs(exponents).sum()) * ratio ** kn / (kn * -math.expm1(kn * lnq) * (1.0 - ratio))
    return log_tail, terms_needed, bound
