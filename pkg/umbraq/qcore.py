import math
import logging
from dataclasses import dataclass
import numpy as np
from umbraq.bin import products
from umbraq.bin.config import QParam, ToleranceConfig, as_qparam, resolve_tolerance
from umbraq.bin.errors import ConvergenceError, PoleError
from umbraq.utilities import constants


logger = logging.getLogger(__name__)



@dataclass(frozen=True)
class GammaQResult:
    """A q-Gamma value with the number of product factors used and the truncation bound."""
    value: float
    factors_used: int
    truncation_error_bound: float

    def __float__(self) -> float:
        return float(self.value)



def q_number(n, q: QParam | float):
    """
    The q-number [n]_q = (1 - q**n) / (1 - q), defined for real n.

    Args:
        n (float or array_like): The number to deform. Non-integer values are allowed.
        q (QParam | float): The deformation parameter.

    Returns:
        float or np.ndarray: [n]_q, with the shape of n.

    Example:
        >>> q_number(2, 0.5)
        1.5
    """
    q = as_qparam(q).q
    value = -np.expm1(np.asarray(n, dtype=float) * math.log(q)) / (1.0 - q) + 0.0
    return float(value) if np.ndim(value) == 0 else value



def q_number_infinity(k: float, q: QParam | float) -> float:
    """[inf]_{q**k} = 1 / (1 - q**k), for k > 0."""
    if not k > 0:
        raise ValueError(f"k must be positive, got {k!r}")
    q = as_qparam(q).q
    return -1.0 / math.expm1(k * math.log(q))



def q_factorial(n: int, q: QParam | float) -> float:
    """
    The q-factorial [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.

    Raises:
        ValueError: If n is negative or not an integer.
    """
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    n = int(n)
    if n == 0:
        return 1.0
    return float(np.prod(q_number(np.arange(1, n + 1), q)))



def q_gamma(x: float, q: QParam | float, tol: ToleranceConfig | None = None) -> GammaQResult:
    """
    The Thomae-Jackson q-Gamma function
        qGamma(x) = (1 - q)**(1 - x) * prod_{n>=0} (1 - q**(n+1)) / (1 - q**(n+x)).

    The factors are multiplied directly while q**(n+x) > 1/2; the rest of the product is summed
    in closed form (see umbraq.bin.products), so truncation_error_bound is the remainder of that
    summation. Negative non-integer x is shifted into (0, 1) through qGamma(x+1) = [x]_q qGamma(x).

    Args:
        x (float): The argument, not a non-positive integer.
        q (QParam | float): The deformation parameter.
        tol (ToleranceConfig, optional): Tolerances and caps. Defaults to get_default_tolerance().

    Returns:
        GammaQResult: The value with its truncation record.

    Raises:
        PoleError: At x = 0, -1, -2, ...
        ConvergenceError: If the factor cap is reached.

    Example:
        >>> round(q_gamma(3, 0.5).value, 12)
        1.5
    """
    q = as_qparam(q)
    tol = resolve_tolerance(tol)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(x)

    if x > 0.0:
        return __thomae_jackson(x, q.q, tol)

    shift = math.ceil(-x)
    base = __thomae_jackson(x + shift, q.q, tol)
    divisor = float(np.prod(q_number(x + np.arange(shift), q)))
    return GammaQResult(base.value / divisor, base.factors_used, base.truncation_error_bound / abs(divisor))



def q_gamma_bracket(x: float, q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """
    qGamma through its bracket form
        qGamma(x) = (1 - q)**(1 - x) * prod_{n>=0} 1 / [1 + (x - 1)/(n + 1)]_{q**(n+1)}.

    Unlike q_gamma the product is truncated literally, once |factor - 1| < rel_tol * (1 - q), so
    q close to 1 exhausts the factor cap much sooner.

    Raises:
        PoleError: At x = 0, -1, -2, ...
        ConvergenceError: If the factor cap is reached.
    """
    q = as_qparam(q)
    tol = resolve_tolerance(tol)
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(x)
    if x > 0.0:
        return __bracket_product(x, q.q, tol)
    shift = math.ceil(-x)
    return __bracket_product(x + shift, q.q, tol) / float(np.prod(q_number(x + np.arange(shift), q)))



def pi_q_result(q: QParam | float, tol: ToleranceConfig | None = None) -> GammaQResult:
    """pi_q = qGamma(1/2)**2 with its propagated truncation bound."""
    half = q_gamma(0.5, q, tol)
    value = half.value * half.value
    return GammaQResult(value, half.factors_used, 2.0 * abs(half.value) * half.truncation_error_bound)



def pi_q(q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """
    The q-deformed pi, pi_q = qGamma(1/2)**2. Tends to pi as q -> 1.

    Example:
        >>> round(pi_q(0.9999), 2)
        3.14
    """
    return pi_q_result(q, tol).value



def pi_q_wallis(q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """
    pi_q from the q-Wallis product in base s = sqrt(q):
        pi_q = ([2]_s / [inf]_s) * prod_{n>=0} ([2n+2]_s / [2n+1]_s)**2,
    truncated once the squared ratio is within rel_tol * (1 - s) of one.
    """
    q = as_qparam(q)
    tol = resolve_tolerance(tol)
    s = QParam(math.sqrt(q.q), q_max=max(q.q_max, math.sqrt(q.q)))
    log_value = math.log(q_number(2, s) / q_number_infinity(1, s))
    threshold = tol.rel_tol * (1.0 - s.q)

    start = 0
    chunk = 4096
    while start < tol.max_product_factors:
        n = np.arange(start, min(start + chunk, tol.max_product_factors), dtype=float)
        factors = (q_number(2 * n + 2, s) / q_number(2 * n + 1, s)) ** 2
        settled = np.nonzero(np.abs(factors - 1.0) < threshold)[0]
        if settled.size:
            stop = settled[0] + 1
            log_value += float(np.log(factors[:stop]).sum())
            logger.debug("q-Wallis product for q=%s settled after %d factors", q.q, start + stop)
            return math.exp(log_value)
        log_value += float(np.log(factors).sum())
        start += chunk
    raise ConvergenceError(f"q-Wallis product for q = {q.q} needs more than {tol.max_product_factors} factors")



def wallis_partial(N: int) -> float:
    """
    The classical Wallis partial product prod_{n=0}^{N-1} (2n+2)**2 / ((2n+1)(2n+3)), tending to pi/2.

    Raises:
        ValueError: If N is not a positive integer.
    """
    if isinstance(N, bool) or int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    n = np.arange(int(N), dtype=float)
    # (2n+2)^2 / ((2n+1)(2n+3)) = 1 + 1/((2n+1)(2n+3))
    return math.exp(float(np.log1p(1.0 / ((2 * n + 1) * (2 * n + 3))).sum()))



def classical_gamma(x: float) -> float:
    """
    The Euler Gamma function through the Lanczos approximation (g = 7), with the reflection
    Gamma(x) Gamma(1 - x) = pi / sin(pi x) below 1/2.

    Raises:
        PoleError: At x = 0, -1, -2, ...
    """
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(x)
    if x < 0.5:
        return math.pi / (__sin_pi(x) * classical_gamma(1.0 - x))
    if x > 171.7:
        return math.inf
    x -= 1.0
    t = x + constants.LANCZOS_G + 0.5
    power = t ** ((x + 0.5) / 2.0)
    return math.sqrt(2.0 * math.pi) * power * math.exp(-t) * power * __lanczos_sum(x)



def classical_lgamma(x: float) -> float:
    """log|Gamma(x)|."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(x)
    if x < 0.5:
        return math.log(math.pi) - math.log(abs(__sin_pi(x))) - classical_lgamma(1.0 - x)
    x -= 1.0
    t = x + constants.LANCZOS_G + 0.5
    return constants.HALF_LOG_TWO_PI + (x + 0.5) * math.log(t) - t + math.log(__lanczos_sum(x))



def classical_rgamma(x: float) -> float:
    """1 / Gamma(x), an entire function: zero at the poles of Gamma."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    if x < 0.5:
        return __sin_pi(x) * classical_gamma(1.0 - x) / math.pi
    return 1.0 / classical_gamma(x)



# ---- Private Functions ----

def __thomae_jackson(x: float, q: float, tol: ToleranceConfig) -> GammaQResult:
    product = products.q_product([1.0, x], [1.0, -1.0], q, tol)
    log_value = (1.0 - x) * math.log1p(-q) + product.log_abs
    value = math.inf if log_value > 709.0 else product.sign * math.exp(log_value)
    bound = abs(value) * product.relative_bound
    if bound > tol.rel_tol * abs(value):
        raise ConvergenceError(f"qGamma({x}) tail bound {bound:.3e} exceeds rel_tol")
    return GammaQResult(value, product.factors_used, bound)



def __bracket_product(x: float, q: float, tol: ToleranceConfig) -> float:
    lnq = math.log(q)
    log_value = (1.0 - x) * math.log1p(-q)
    threshold = tol.rel_tol * (1.0 - q)

    start = 0
    chunk = 4096
    while start < tol.max_product_factors:
        m = np.arange(start, min(start + chunk, tol.max_product_factors), dtype=float) + 1.0
        log_base = m * lnq
        # [1 + (x-1)/m]_{q**m}
        brackets = np.expm1((1.0 + (x - 1.0) / m) * log_base) / np.expm1(log_base)
        settled = np.nonzero(np.abs(1.0 / brackets - 1.0) < threshold)[0]
        if settled.size:
            stop = settled[0] + 1
            return math.exp(log_value - float(np.log(brackets[:stop]).sum()))
        log_value -= float(np.log(brackets).sum())
        start += chunk
    raise ConvergenceError(f"bracket product for q = {q} needs more than {tol.max_product_factors} factors")



def __lanczos_sum(x: float) -> float:
    coefficients = constants.LANCZOS_COEFFICIENTS
    return coefficients[0] + sum(c / (x + i) for i, c in enumerate(coefficients[1:], start=1))



def __sin_pi(x: float) -> float:
    """sin(pi x) with the argument reduced to [-1/2, 1/2] first."""
    n = round(x)
    s = math.sin(math.pi * (x - n))
    return -s if n % 2 else s
