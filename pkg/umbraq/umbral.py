"""
Umbral images: a moment rule mu -> value standing for (operator**mu) acting on a vacuum, and the
evaluators that turn an operator expression into an ordinary series or a Laplace integral.
"""
import math
import logging
from typing import Callable
from dataclasses import dataclass, field
import numpy as np
from umbraq import qcore
from umbraq.bin import products
from umbraq.bin.config import QParam, ToleranceConfig, as_qparam, resolve_tolerance
from umbraq.bin.errors import PoleError, SeriesDivergence, UmbralEvaluationError
from umbraq.bin.series import SeriesResult, sum_ratio_series
from umbraq.quadrature import QuadratureResult, laplace_integral
from umbraq.utilities import constants


logger = logging.getLogger(__name__)



@dataclass(frozen=True)
class UmbralImage:
    """
    A moment rule realizing operator powers on the vacuum.

    Args:
        moment (Callable[[float], float]): mu -> value of the operator's mu-th power on the vacuum.
        label (str): Display name.
        ratio (Callable[[float], float], optional): mu -> moment(mu + 1) / moment(mu), used for
            fast recurrences. Without it the series engine divides consecutive moments.
        series_gate (float, optional): Radius inside which geometric-type series are accepted.
    """
    moment: Callable[[float], float]
    label: str
    ratio: Callable[[float], float] | None = None
    series_gate: float = math.inf

    def moment_ratio(self, mu: float) -> float:
        if self.ratio is not None:
            return self.ratio(mu)
        base = self.moment(mu)
        if base == 0.0:
            raise UmbralEvaluationError(f"{self.label}: zero moment at mu = {mu}, no recurrence available")
        return self.moment(mu + 1.0) / base



@dataclass(frozen=True)
class QGammaImage(UmbralImage):
    """The image of c**stride, moment(mu) = 1 / qGamma(1 + stride*mu)."""
    q: float = 0.5
    stride: int = 1

    @property
    def euler_available(self) -> bool:
        _, _, log_qq_inf = products.euler_coefficients(self.q)
        return log_qq_inf > constants.EULER_LOG_POCHHAMMER_FLOOR

    def euler_terms(self, shift: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Weights and rates of exp(-X c**stride) c**(stride*shift) on the vacuum = sum_j w_j exp(-beta_j X).
        Returns (log|w_j|, sign(w_j), beta_j).
        """
        log_c, sign_c, log_qq_inf = products.euler_coefficients(self.q)
        lnq = math.log(self.q)
        j = np.arange(log_c.size, dtype=float)
        k = float(self.stride)
        log_w = k * shift * (math.log1p(-self.q) + j * lnq) + log_c - log_qq_inf
        beta = np.exp(k * (math.log1p(-self.q) + j * lnq))
        return log_w, sign_c, beta



@dataclass(frozen=True)
class UmbralExpSeries:
    """
    The series sum_r extra_weight(r) * moment(r + shift) * (-x)**r.

    weight_ratio(r) must equal extra_weight(r + 1) / extra_weight(r); it drives the recurrence.
    """
    image: UmbralImage
    shift: float = 0.0
    extra_weight: Callable[[int], float] = field(default=lambda r: 1.0 / math.factorial(r))
    weight_ratio: Callable[[int], float] = field(default=lambda r: 1.0 / (r + 1.0))

    def term(self, r: int, x):
        return self.extra_weight(r) * self.image.moment(r + self.shift) * np.power(-np.asarray(x, dtype=float), r)

    def sum(self, x, tol: ToleranceConfig) -> SeriesResult:
        """Sums the series elementwise over x; moments at negative order are taken one by one."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        start = 0 if self.shift >= 0.0 else math.ceil(-self.shift)
        head = np.zeros_like(x)
        for r in range(start):
            head = head + self.term(r, x)

        image, shift, weight_ratio = self.image, self.shift, self.weight_ratio
        result = sum_ratio_series(self.term(start, x), lambda r: weight_ratio(r) * image.moment_ratio(r + shift), -x,
                                  tol, start=start)
        return SeriesResult(result.value + head, np.maximum(result.peak, np.abs(head)), result.terms_used + start)



def c_image(q: QParam | float, stride: int = 1, tol: ToleranceConfig | None = None) -> QGammaImage:
    """
    The image of c**stride: moment(mu) = 1 / qGamma(1 + stride*mu), so moment(m) = 1/[stride*m]_q! at integers.

    Poles of qGamma surface as UmbralEvaluationError.
    """
    q = as_qparam(q).q
    if int(stride) != stride or stride < 1:
        raise ValueError(f"stride must be a positive integer, got {stride!r}")
    stride = int(stride)
    steps = np.arange(1, stride + 1, dtype=float)

    def moment(mu: float) -> float:
        try:
            return 1.0 / qcore.q_gamma(1.0 + stride * mu, q, tol).value
        except PoleError as e:
            raise UmbralEvaluationError(f"c^{stride} moment at mu = {mu}: {e}") from e

    def ratio(mu: float) -> float:
        return 1.0 / float(np.prod(qcore.q_number(stride * mu + steps, q)))

    label = "c" if stride == 1 else f"c^{stride}"
    return QGammaImage(moment, label, ratio, (1.0 + q) ** -stride, q, stride)



def exponential_series(image: UmbralImage, shift: float = 0.0) -> UmbralExpSeries:
    """exp(-x * image) image**shift on the vacuum, weights 1/r!."""
    return UmbralExpSeries(image, shift)



def geometric_series(image: UmbralImage, shift: float = 0.0) -> UmbralExpSeries:
    """image**shift / (1 + x * image) on the vacuum expanded termwise, weights 1."""
    return UmbralExpSeries(image, shift, extra_weight=lambda r: 1.0, weight_ratio=lambda r: 1.0)



def umbral_exp(image: UmbralImage, x, shift: float = 0.0, tol: ToleranceConfig | None = None):
    """
    exp(-x * image) image**shift on the vacuum = sum_r (-x)**r moment(r + shift) / r!.

    For q-Gamma images each element picks, between the series and the Euler expansion
    sum_j w_j exp(-beta_j x), the route with the smaller rounding estimate: the series for small
    and negative x, the expansion once the series terms grow large.

    Args:
        image (UmbralImage): The moment rule.
        x (float or array_like): The argument.
        shift (float, optional): The mu-offset. Defaults to 0.
        tol (ToleranceConfig, optional): Defaults to get_default_tolerance().

    Returns:
        float or np.ndarray: Matching the shape of x.

    Raises:
        SeriesDivergence: If the series route fails its ratio test within max_series_terms.
    """
    tol = resolve_tolerance(tol)
    x_arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(x_arr).ravel()
    series = exponential_series(image, shift)

    if isinstance(image, QGammaImage):
        values = __hybrid_exp(image, series, flat, tol)
    else:
        values = series.sum(flat, tol).value

    return float(values[0]) if x_arr.ndim == 0 else values.reshape(x_arr.shape)



def umbral_geometric(image: UmbralImage, x, shift: float = 0.0, tol: ToleranceConfig | None = None):
    """
    Direct alternating sum sum_r (-x)**r moment(r + shift), accepted only inside the image's series gate.

    Raises:
        SeriesDivergence: If |x| is not below image.series_gate.
    """
    tol = resolve_tolerance(tol)
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) >= image.series_gate):
        raise SeriesDivergence(f"|x| must stay below {image.series_gate:.6g} for the {image.label} series")
    values = geometric_series(image, shift).sum(np.atleast_1d(x_arr).ravel(), tol).value
    return float(values[0]) if x_arr.ndim == 0 else values.reshape(x_arr.shape)



def in_series_gate(image: UmbralImage, x: float) -> bool:
    return abs(x) < image.series_gate



def umbral_rational_result(image: UmbralImage, x: float, numerator_power: float = 0,
                           tol: ToleranceConfig | None = None) -> QuadratureResult:
    """
    x**a image**a / (1 + x * image) on the vacuum through the Laplace device
        x**a * int_0^inf exp(-s) [exp(-s x image) image**a](vacuum) ds.

    For a stride-k image of c, x stands for the k-th power of the original variable.
    """
    tol = resolve_tolerance(tol)
    x = float(x)
    a = float(numerator_power)
    if x < 0.0 and a != math.floor(a):
        raise ValueError("a negative argument needs an integer numerator power")
    result = laplace_integral(lambda s: umbral_exp(image, s * x, shift=a, tol=tol), tol)
    scale = x ** a if a else 1.0
    return QuadratureResult(scale * result.value, abs(scale) * result.abs_error_estimate,
                            result.evaluations, result.converged)



def umbral_rational(image: UmbralImage, x: float, numerator_power: float = 0,
                    tol: ToleranceConfig | None = None) -> float:
    """
    The Borel-regularized value of x**a image**a / (1 + x * image) on the vacuum.

    Inside the series gate it agrees with sum_r (-x)**r moment(r + a) * x**a.

    Example:
        >>> umbral_rational(c_image(0.5), 0.0)
        1.0
    """
    return umbral_rational_result(image, x, numerator_power, tol).value



def umbral_resolvent(image: QGammaImage, x: float, numerator_power: float = 0) -> float:
    """
    Closed Euler form of x**a image**a / (1 + x * image) on the vacuum, sum_j w_j / (1 + beta_j x),
    valid for x > -1/beta_0. Independent of any quadrature.
    """
    log_w, sign_w, beta = image.euler_terms(float(numerator_power))
    x = float(x)
    if 1.0 + beta[0] * x <= 0.0:
        raise ValueError(f"resolvent needs x > {-1.0 / beta[0]:.6g}")
    value = float(np.sum(sign_w * np.exp(log_w) / (1.0 + beta * x)))
    return value * x ** numerator_power if numerator_power else value



# ---- Private Functions ----

def __hybrid_exp(image: QGammaImage, series: UmbralExpSeries, x: np.ndarray, tol: ToleranceConfig) -> np.ndarray:
    values = np.empty_like(x)
    errors = np.full_like(x, math.inf)
    if image.euler_available and np.any(x > 0.0):
        positive = x > 0.0
        euler_values, euler_errors = __euler_sum(image.euler_terms(series.shift), x[positive])
        values[positive] = euler_values
        errors[positive] = euler_errors
    pending = errors > max(tol.abs_tol, 64 * constants.EPS)

    # the series overflows once (1-q)**stride * x is beyond a few hundred
    reachable = (1.0 - image.q) ** image.stride * np.abs(x) < 600.0
    candidates = pending & reachable
    if candidates.any():
        result = series.sum(x[candidates], tol)
        series_errors = result.rounding_error
        better = series_errors < errors[candidates]
        chosen = np.flatnonzero(candidates)[better]
        values[chosen] = result.value[better]
        errors[chosen] = series_errors[better]

    if not np.all(np.isfinite(errors)):
        raise SeriesDivergence(f"{image.label} exponential cannot be evaluated at x = {x[~np.isfinite(errors)][0]:g}")
    worst = float(errors.max())
    if worst > 1e-6:
        logger.warning("%s exponential evaluated with rounding error up to %.2e", image.label, worst)
    return values



def __euler_sum(terms: tuple[np.ndarray, np.ndarray, np.ndarray], x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    log_w, sign_w, beta = terms
    magnitudes = np.exp(log_w[None, :] - np.outer(x, beta))
    values = magnitudes @ sign_w
    errors = constants.SERIES_ROUNDING_FACTOR * constants.EPS * magnitudes.sum(axis=1) * math.sqrt(log_w.size)
    return values, errors
