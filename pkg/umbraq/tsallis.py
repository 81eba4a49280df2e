import math
import logging
from dataclasses import dataclass
import numpy as np
from umbraq import qcore
from umbraq.bin.config import ToleranceConfig, resolve_tolerance
from umbraq.bin.errors import ConfigError, PoleError
from umbraq.quadrature import QuadratureResult, finite_integral
from umbraq.umbral import UmbralImage


logger = logging.getLogger(__name__)



@dataclass(frozen=True)
class TsallisParam:
    """
    The Tsallis deformation Q = 1 - q_t, with 0 < Q <= 1.

    Raises:
        ConfigError: If Q is outside (0, 1].
    """
    Q: float

    def __post_init__(self):
        Q = self.Q
        if isinstance(Q, bool) or not isinstance(Q, (int, float)) or not (0.0 < Q <= 1.0):
            raise ConfigError(f"Q must satisfy 0 < Q <= 1, got {Q!r}")
        object.__setattr__(self, "Q", float(Q))

    @property
    def support_radius(self) -> float:
        """Half-width of the support of the Tsallis Gaussian."""
        return 1.0 / math.sqrt(self.Q)



def as_tsallis(Q: TsallisParam | float) -> TsallisParam:
    return Q if isinstance(Q, TsallisParam) else TsallisParam(Q)



def tsallis_exp(x, q_t: float):
    """
    The Tsallis exponential [1 + (1 - q_t) x]**(1/(1 - q_t)), cut off to 0 where the bracket is negative.

    q_t = 1 gives exp(x).

    Raises:
        ValueError: If q_t > 1.

    Example:
        >>> tsallis_exp(-4.0, 0.5)
        0.0
    """
    if q_t > 1.0:
        raise ValueError(f"q_t must not exceed 1, got {q_t!r}")
    x = np.asarray(x, dtype=float)
    if q_t == 1.0:
        value = np.exp(x)
    else:
        base = 1.0 + (1.0 - q_t) * x
        value = np.where(base > 0.0, np.power(np.maximum(base, 0.0), 1.0 / (1.0 - q_t)), 0.0)
    return float(value) if value.ndim == 0 else value



def tsallis_gaussian(x, Q: TsallisParam | float):
    """The compactly supported Tsallis Gaussian [1 - Q x**2]_+**(1/Q)."""
    Q = as_tsallis(Q)
    x = np.asarray(x, dtype=float)
    return tsallis_exp(-x * x, 1.0 - Q.Q)



def tsallis_moment(mu: float, Q: TsallisParam | float, strict: bool = True) -> float:
    """
    The moment Gamma(1 + 1/Q) / Gamma(1 + 1/Q - mu) of the d image.

    Args:
        mu (float): The operator power.
        Q (TsallisParam | float): The Tsallis deformation.
        strict (bool, optional): Raise at the poles of the denominator. With strict=False the
            reciprocal Gamma is used and the moment there is 0. Defaults to True.

    Raises:
        PoleError: If strict and 1 + 1/Q - mu is a non-positive integer.
    """
    Q = as_tsallis(Q)
    top = 1.0 + 1.0 / Q.Q
    z = top - float(mu)
    if z <= 0.0 and z == math.floor(z):
        if strict:
            raise PoleError(z, f"Gamma(1 + 1/Q - mu) has a pole at {z:g}")
        return 0.0
    # Gamma is negative on (-1, 0), (-3, -2), ...
    sign = 1.0 if z > 0.0 else (-1.0) ** math.ceil(-z)
    return sign * math.exp(qcore.classical_lgamma(top) - qcore.classical_lgamma(z))



def d_image(Q: TsallisParam | float) -> UmbralImage:
    """The d image, moment(mu) = Gamma(1 + 1/Q) / Gamma(1 + 1/Q - mu); zero at the poles."""
    Q = as_tsallis(Q)
    return UmbralImage(lambda mu: tsallis_moment(mu, Q, strict=False), "d",
                       lambda mu: 1.0 / Q.Q - mu, 1.0)



def tsallis_gaussian_integral(Q: TsallisParam | float, tol: ToleranceConfig | None = None
                              ) -> tuple[float, QuadratureResult]:
    """
    The Tsallis Gaussian integral, closed form against quadrature.

    Returns:
        tuple[float, QuadratureResult]: sqrt(pi/Q) Gamma(1 + 1/Q) / Gamma(3/2 + 1/Q), and the numeric
        integral of [1 - Q x**2]**(1/Q) over |x| <= 1/sqrt(Q).
    """
    Q = as_tsallis(Q)
    tol = resolve_tolerance(tol)
    inverse = 1.0 / Q.Q
    closed = math.sqrt(math.pi / Q.Q) * math.exp(qcore.classical_lgamma(1.0 + inverse)
                                                 - qcore.classical_lgamma(1.5 + inverse))
    radius = Q.support_radius
    numeric = finite_integral(lambda x: tsallis_gaussian(x, Q), -radius, radius, tol,
                              breakpoints=[-radius / 2, 0.0, radius / 2])
    logger.debug("Tsallis Gaussian integral Q=%g: closed %.15g numeric %.15g", Q.Q, closed, numeric.value)
    return closed, numeric



def tsallis_hermite(n: int, y: float, Q: TsallisParam | float) -> float:
    """
    H_n(y, -Q d) on the vacuum: n! sum_{r<=n/2} y**(n-2r) (-Q)**r moment(r) / ((n-2r)! r!).

    Moments at the poles of Gamma(1 + 1/Q - r) contribute 0.

    Example:
        >>> tsallis_hermite(2, 0.5, 0.5)
        -1.75
    """
    Q = as_tsallis(Q)
    n = __check_order(n)
    total = 0.0
    for r in range(n // 2 + 1):
        total += (y ** (n - 2 * r) * (-Q.Q) ** r * tsallis_moment(r, Q, strict=False)
                  / (math.factorial(n - 2 * r) * math.factorial(r)))
    return math.factorial(n) * total



def tsallis_genfun_residual(x: float, y: float, Q: TsallisParam | float, N: int = 20) -> float:
    """
    |sum_{n<=N} x**n H_n / n! - sum_{a + 2m <= N} (y x)**a / a! (-Q x**2)**m moment(m) / m!|,
    the generating function against the product exp(y x) exp(-Q x**2 d), truncated to total order N.
    """
    Q = as_tsallis(Q)
    N = __check_order(N)
    left = sum(x ** n * tsallis_hermite(n, y, Q) / math.factorial(n) for n in range(N + 1))
    right = 0.0
    for m in range(N // 2 + 1):
        gaussian = (-Q.Q * x * x) ** m * tsallis_moment(m, Q, strict=False) / math.factorial(m)
        right += gaussian * sum((y * x) ** a / math.factorial(a) for a in range(N - 2 * m + 1))
    return abs(left - right)



def tsallis_genfun_closed_residual(x: float, y: float, Q: TsallisParam | float, N: int = 20) -> float:
    """|sum_{n<=N} x**n H_n / n! - exp(y x) [1 - Q x**2]**(1/Q)|, for Q x**2 < 1."""
    Q = as_tsallis(Q)
    N = __check_order(N)
    left = sum(x ** n * tsallis_hermite(n, y, Q) / math.factorial(n) for n in range(N + 1))
    return abs(left - math.exp(y * x) * tsallis_gaussian(x, Q))



# ---- Private Functions ----

def __check_order(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    return int(n)
