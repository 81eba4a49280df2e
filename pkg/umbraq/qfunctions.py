import math
import logging
from enum import Enum
import numpy as np
from umbraq import qcore, umbral
from umbraq.bin import products
from umbraq.bin.config import QParam, ToleranceConfig, as_qparam, resolve_tolerance
from umbraq.bin.errors import SeriesDivergence
from umbraq.utilities import constants


logger = logging.getLogger(__name__)



class EvalMethod(str, Enum):
    """How a q-function with both a series and an integral representation is evaluated."""
    SERIES = "series"
    BOREL_INTEGRAL = "borel_integral"
    PRODUCT = "product"
    AUTO = "auto"



def tricomi_q1(x, q: QParam | float, tol: ToleranceConfig | None = None):
    """
    The (q,1)-Tricomi function C(x) = sum_r (-x)**r / (r! [r]_q!), an entire function.

    Args:
        x (float or array_like): The argument.
        q (QParam | float): The deformation parameter.
        tol (ToleranceConfig, optional): Defaults to get_default_tolerance().

    Returns:
        float or np.ndarray: Matching the shape of x.

    Notes:
        - As q -> 1 it tends to the classical Tricomi function, C(x) = J_0(2 sqrt(x)).
        - Large positive x is evaluated through the Euler expansion of the q-Gamma moments.
    """
    return umbral.umbral_exp(umbral.c_image(q, 1, tol), x, 0.0, tol)



def tricomi_qq(x, q: QParam | float, tol: ToleranceConfig | None = None):
    """
    The (q,q)-Tricomi function sum_r (-x)**r / ([r]_q!)**2.

    The series converges for |x| < (1 - q)**-2.

    Raises:
        SeriesDivergence: Outside that radius.
    """
    q = as_qparam(q).q
    tol = resolve_tolerance(tol)
    radius = (1.0 - q) ** -2
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) >= radius):
        raise SeriesDivergence(f"(q,q)-Tricomi series needs |x| < {radius:.6g} at q = {q}")
    image = qq_image(q, tol)
    values = umbral.geometric_series(image).sum(np.atleast_1d(x_arr).ravel(), tol).value
    return float(values[0]) if x_arr.ndim == 0 else values.reshape(x_arr.shape)



def qq_image(q: QParam | float, tol: ToleranceConfig | None = None) -> umbral.UmbralImage:
    """moment(mu) = 1 / qGamma(1 + mu)**2, the image behind the (q,q)-Tricomi function."""
    q = as_qparam(q).q
    base = umbral.c_image(q, 1, tol)
    return umbral.UmbralImage(lambda mu: base.moment(mu) ** 2, "c(q,q)",
                              lambda mu: base.ratio(mu) ** 2, (1.0 - q) ** -2)



def q_bessel(mu: float, z, q: QParam | float, tol: ToleranceConfig | None = None):
    """
    The q-Bessel function J_mu(z) = a**(mu/2) sum_r (-a)**r / (r! [mu + r]_q!), with a = z**2 / 4.

    At mu = 0 it reduces to tricomi_q1(z**2 / 4).

    Raises:
        ValueError: If mu < 0 or z < 0.
    """
    if mu < 0:
        raise ValueError(f"mu must be non-negative, got {mu!r}")
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr < 0.0):
        raise ValueError("z must be non-negative")
    a = z_arr * z_arr / 4.0
    series = umbral.umbral_exp(umbral.c_image(q, 1, tol), a, float(mu), tol)
    value = np.power(a, mu / 2.0) * series
    return float(value) if z_arr.ndim == 0 else value



def q_exp(x: float, q: QParam | float, method: EvalMethod | str = EvalMethod.AUTO,
          tol: ToleranceConfig | None = None) -> float:
    """
    The q-exponential qe(x) = sum_r (-x)**r / [r]_q!, the image of 1 / (1 + c x).

    Args:
        x (float): The argument.
        q (QParam | float): The deformation parameter.
        method (EvalMethod | str, optional): SERIES requires |x| < 1/(1+q). BOREL_INTEGRAL computes
            int_0^inf exp(-s) tricomi_q1(x s) ds and needs x > -1/(1-q). PRODUCT uses
            1 / (-(1-q)x; q)_inf with the same domain. AUTO picks SERIES inside the gate and
            BOREL_INTEGRAL outside. Defaults to AUTO.
        tol (ToleranceConfig, optional): Defaults to get_default_tolerance().

    Raises:
        SeriesDivergence: SERIES mode outside the gate.
        ValueError: Integral or product mode at x <= -1/(1-q).

    Example:
        >>> q_exp(0.0, 0.5)
        1.0
    """
    q = as_qparam(q)
    tol = resolve_tolerance(tol)
    method = EvalMethod(method)
    x = float(x)
    image = umbral.c_image(q, 1, tol)

    if method is EvalMethod.AUTO:
        method = EvalMethod.SERIES if umbral.in_series_gate(image, x) else EvalMethod.BOREL_INTEGRAL
    if method is EvalMethod.SERIES:
        return umbral.umbral_geometric(image, x, 0.0, tol)

    if x <= -1.0 / (1.0 - q.q):
        raise ValueError(f"q_exp needs x > {-1.0 / (1.0 - q.q):.6g} outside the series gate")
    if method is EvalMethod.PRODUCT:
        log_abs, sign = products.log_qpochhammer(-(1.0 - q.q) * x, q.q, tol)
        return sign * math.exp(-log_abs)
    return umbral.umbral_rational(image, x, 0, tol)



def q_exp_imaginary(x: float, q: QParam | float, tol: ToleranceConfig | None = None) -> complex:
    """
    qe(-i x) = sum_r (i x)**r / [r]_q! summed in complex arithmetic, |x| < 1/(1+q).

    Its real and imaginary parts are q_cos(x) and q_sin(x).
    """
    q = as_qparam(q)
    tol = resolve_tolerance(tol)
    x = float(x)
    if abs(x) >= 1.0 / (1.0 + q.q):
        raise SeriesDivergence(f"|x| must stay below {1.0 / (1.0 + q.q):.6g}")
    term = complex(1.0)
    total = complex(1.0)
    quiet = 0
    for r in range(1, tol.max_series_terms + 1):
        term *= 1j * x / qcore.q_number(r, q)
        total += term
        quiet = quiet + 1 if abs(term) <= tol.abs_tol else 0
        if quiet >= 2:
            return total
    raise SeriesDivergence("q-exponential series did not converge")



def q_cos(x: float, q: QParam | float, tol: ToleranceConfig | None = None,
          method: EvalMethod | str = EvalMethod.AUTO) -> float:
    """
    cos-q: sum_k (-1)**k x**(2k) / [2k]_q!, realized as the c**2 image of 1/(1 + c**2 x**2).

    Outside the series gate it is evaluated as int_0^inf exp(-s) sum_r (-s x**2)**r / (r! [2r]_q!) ds.
    """
    image = umbral.c_image(q, 2, tol)
    argument = float(x) * float(x)
    if __use_series(image, argument, method):
        return umbral.umbral_geometric(image, argument, 0.0, tol)
    return umbral.umbral_rational(image, argument, 0, tol)



def q_sin(x: float, q: QParam | float, tol: ToleranceConfig | None = None,
          method: EvalMethod | str = EvalMethod.AUTO) -> float:
    """
    sin-q: sum_k (-1)**k x**(2k+1) / [2k+1]_q!, the odd companion of q_cos.
    """
    image = umbral.c_image(q, 2, tol)
    x = float(x)
    argument = x * x
    if __use_series(image, argument, method):
        return x * umbral.umbral_geometric(image, argument, 0.5, tol)
    return math.copysign(1.0, x) * umbral.umbral_rational(image, argument, 0.5, tol)



def hermite2(n: int, x, y):
    """
    The two-variable Hermite polynomial H_n(x, y) = n! sum_{r<=n/2} x**(n-2r) y**r / ((n-2r)! r!).

    Example:
        >>> hermite2(3, 1.0, -1.0)
        -5.0
    """
    n = __check_order(n)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    total = np.zeros(np.broadcast(x, y).shape)
    for r in range(n // 2 + 1):
        coefficient = math.factorial(n) // (math.factorial(n - 2 * r) * math.factorial(r))
        total = total + coefficient * x ** (n - 2 * r) * y ** r
    return float(total) if total.ndim == 0 else total



def gaussian_derivative(n: int, a: float, x):
    """(-1)**n d^n/dx^n exp(-a x**2) = exp(-a x**2) H_n(2 a x, -a), for a > 0."""
    if not a > 0:
        raise ValueError(f"a must be positive, got {a!r}")
    x = np.asarray(x, dtype=float)
    value = np.exp(-a * x * x) * hermite2(n, 2.0 * a * x, -a)
    return float(value) if np.ndim(value) == 0 else value



def q_gaussian_derivative(n: int, x: float, q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """
    (-1)**n d^n/dx^n C(x**2), C the (q,1)-Tricomi function, through the Hermite/q-Bessel expansion

        n! sum_{r<=n/2} (-1)**r 2**(n-2r) x**-r J_{n-r}(2x) / ((n-2r)! r!),

    with J the q-Bessel function. Negative x follows from the parity (-1)**n of the result; for
    |x| < 0.1 the negative powers of x cancel badly, so the termwise-differentiated Taylor series
    is used instead.
    """
    n = __check_order(n)
    x = float(x)
    if abs(x) < constants.SMALL_ARGUMENT:
        logger.debug("small argument %g, using the differentiated series", x)
        return q_gaussian_derivative_series(n, x, q, tol)
    if x < 0.0:
        return (-1.0) ** n * q_gaussian_derivative(n, -x, q, tol)

    total = 0.0
    for r in range(n // 2 + 1):
        coefficient = (-1.0) ** r * 2.0 ** (n - 2 * r) / (math.factorial(n - 2 * r) * math.factorial(r))
        total += coefficient * x ** -r * q_bessel(n - r, 2.0 * x, q, tol)
    return math.factorial(n) * total



def q_gaussian_derivative_series(n: int, x: float, q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """
    (-1)**n d^n/dx^n C(x**2) from the Taylor series of C(x**2) differentiated term by term:
        sum_{2r>=n} (-1)**(r+n) (2r)!/(2r-n)! x**(2r-n) / (r! [r]_q!).
    """
    n = __check_order(n)
    q = as_qparam(q)
    tol = resolve_tolerance(tol)
    x = float(x)
    r = (n + 1) // 2
    base = x ** (2 * r - n) / (math.factorial(r) * qcore.q_factorial(r, q))
    total = 0.0
    quiet = 0
    for _ in range(tol.max_series_terms):
        term = (-1.0) ** (r + n) * math.perm(2 * r, n) * base
        total += term
        quiet = quiet + 1 if abs(term) <= max(tol.abs_tol, constants.EPS * abs(total)) else 0
        if quiet >= 2:
            return total
        r += 1
        base *= x * x / (r * qcore.q_number(r, q))
    raise SeriesDivergence("differentiated Tricomi series did not converge")



# ---- Private Functions ----

def __use_series(image: umbral.UmbralImage, argument: float, method: EvalMethod | str) -> bool:
    method = EvalMethod(method)
    if method is EvalMethod.PRODUCT:
        raise ValueError("q-trig series have no product mode")
    if method is EvalMethod.AUTO:
        return umbral.in_series_gate(image, argument)
    return method is EvalMethod.SERIES



def __check_order(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    return int(n)
