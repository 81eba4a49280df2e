import math
import logging
from enum import Enum
from typing import Callable, Iterable, Mapping
import numpy as np
from numpy.polynomial import Polynomial
from umbraq import qcore, qfunctions
from umbraq.bin.config import QParam, ToleranceConfig, as_qparam
from umbraq.qfunctions import EvalMethod
from umbraq.utilities import constants


logger = logging.getLogger(__name__)



class TricomiVariant(str, Enum):
    Q1 = "q1"
    QQ = "qq"



class BivariatePoly:
    """
    A sparse polynomial in (x, y) with real coefficients, immutable.

    Terms are kept as a mapping (x_power, y_power) -> coefficient; duplicate keys passed to the
    constructor are summed and exact zeros dropped.
    """
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], float] | Iterable[tuple[int, int, float]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else (((i, j), c) for i, j, c in terms)
        collected: dict[tuple[int, int], float] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError(f"negative power ({i}, {j})")
            key = (int(i), int(j))
            collected[key] = collected.get(key, 0.0) + float(c)
        self._terms = {key: c for key, c in collected.items() if c != 0.0}

    @property
    def terms(self) -> tuple[tuple[int, int, float], ...]:
        return tuple((i, j, c) for (i, j), c in sorted(self._terms.items(), key=lambda kv: (-kv[0][0], kv[0][1])))

    def coefficient(self, x_power: int, y_power: int) -> float:
        return self._terms.get((x_power, y_power), 0.0)

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        merged = dict(self._terms)
        for key, c in other._terms.items():
            merged[key] = merged.get(key, 0.0) + c
        return BivariatePoly(merged)

    def __neg__(self) -> "BivariatePoly":
        return self.scale(-1.0)

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        return self + (-other)

    def scale(self, factor: float) -> "BivariatePoly":
        return BivariatePoly({key: factor * c for key, c in self._terms.items()})

    def d_x(self) -> "BivariatePoly":
        return BivariatePoly({(i - 1, j): i * c for (i, j), c in self._terms.items() if i > 0})

    def d_y(self) -> "BivariatePoly":
        return BivariatePoly({(i, j - 1): j * c for (i, j), c in self._terms.items() if j > 0})

    def q_d_x(self, q: QParam | float) -> "BivariatePoly":
        """Jackson derivative in x: x**i -> [i]_q x**(i-1)."""
        return BivariatePoly({(i - 1, j): qcore.q_number(i, q) * c for (i, j), c in self._terms.items() if i > 0})

    def times_x(self) -> "BivariatePoly":
        return BivariatePoly({(i + 1, j): c for (i, j), c in self._terms.items()})

    def times_y(self) -> "BivariatePoly":
        return BivariatePoly({(i, j + 1): c for (i, j), c in self._terms.items()})

    def evaluate(self, x: float, y: float) -> float:
        return float(sum(c * x ** i * y ** j for (i, j), c in self._terms.items()))

    def magnitude(self, x: float, y: float) -> float:
        """Sum of |term| at (x, y), the scale against which cancellations are judged."""
        return float(sum(abs(c * x ** i * y ** j) for (i, j), c in self._terms.items()))

    def max_abs_coefficient(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BivariatePoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"BivariatePoly({self})"

    def __str__(self) -> str:
        return poly_text(self)



def poly_text(poly: BivariatePoly) -> str:
    """Text form with descending x powers, e.g. "x^2 + 1.5*y"; coefficients of magnitude 1 are omitted."""
    if poly.is_zero():
        return "0"
    text = ""
    for i, j, c in poly.terms:
        monomial = "*".join(part for part in (__monomial_part("x", i), __monomial_part("y", j)) if part)
        magnitude = abs(c)
        if not monomial:
            body = f"{magnitude:.12g}"
        elif magnitude == 1.0:
            body = monomial
        else:
            body = f"{magnitude:.12g}*{monomial}"
        if not text:
            text = f"-{body}" if c < 0 else body
        else:
            text += f" - {body}" if c < 0 else f" + {body}"
    return text



def jackson_derivative_fn(f: Callable[[float], float], x: float, q: QParam | float) -> float:
    """
    The Jackson derivative (f(x) - f(q x)) / ((1 - q) x).

    At |x| < 1e-8 the quotient is 0/0; the central finite difference of f at 0 is returned instead.

    Example:
        >>> jackson_derivative_fn(lambda t: t * t, 3.0, 0.5)
        4.5
    """
    q = as_qparam(q).q
    x = float(x)
    if abs(x) < constants.JACKSON_ZERO_GUARD:
        h = constants.FD_STEP
        return (f(h) - f(-h)) / (2.0 * h)
    return (f(x) - f(q * x)) / ((1.0 - q) * x)



def jackson_derivative_poly(p: Polynomial, q: QParam | float) -> Polynomial:
    """Exact Jackson derivative of a polynomial: c_n x**n -> c_n [n]_q x**(n-1)."""
    coefficients = np.asarray(p.coef, dtype=float)
    if coefficients.size <= 1:
        return Polynomial([0.0])
    lowered = coefficients[1:] * qcore.q_number(np.arange(1, coefficients.size), q)
    return Polynomial(lowered).trim()



def q_exp_eigen_residual(lam: float, x: float, q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """qD_x qe(lam x) + lam qe(lam x); zero because the q-exponential is the Jackson eigenfunction."""
    def f(t: float) -> float:
        return qfunctions.q_exp(lam * t, q, EvalMethod.AUTO, tol)
    return jackson_derivative_fn(f, x, q) + lam * f(float(x))



def tricomi_eigen_residual(variant: TricomiVariant | str, lam: float, x: float, q: QParam | float,
                           tol: ToleranceConfig | None = None) -> float:
    """
    Eigen-equation residuals of the Tricomi functions:
        q1: d/dx [x qD_x C(lam x)] + lam C(lam x), the outer derivative by Richardson-extrapolated central differences;
        qq: qD_x [x qD_x C_qq(lam x)] + lam C_qq(lam x), both derivatives exact q-difference quotients.

    Args:
        variant (TricomiVariant | str): "q1" or "qq".
        lam (float): The eigenvalue parameter.
        x (float): The point, x > 0.
        q (QParam | float): The deformation parameter.
    """
    variant = TricomiVariant(variant)
    q = as_qparam(q)
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"x must be positive, got {x!r}")
    function = qfunctions.tricomi_q1 if variant is TricomiVariant.Q1 else qfunctions.tricomi_qq

    def inner(t: float) -> float:
        # x qD_x C(lam x) with the x cancelled against the quotient's denominator
        return (function(lam * t, q, tol) - function(lam * q.q * t, q, tol)) / (1.0 - q.q)

    if variant is TricomiVariant.Q1:
        h = constants.FD_STEP
        coarse = (inner(x + h) - inner(x - h)) / (2.0 * h)
        fine = (inner(x + h / 2) - inner(x - h / 2)) / h
        outer = (4.0 * fine - coarse) / 3.0
    else:
        outer = jackson_derivative_fn(inner, x, q)
    return outer + lam * function(lam * x, q, tol)



def q_hermite(n: int, q: QParam | float) -> BivariatePoly:
    """
    The (q,1) two-variable Hermite polynomial
        H_n(x, y) = sum_{r<=n/2} [n]_q! y**r x**(n-2r) / ([n-2r]_q! r!).

    Example:
        >>> str(q_hermite(2, 0.5))
        'x^2 + 1.5*y'
    """
    n = __check_order(n)
    top = qcore.q_factorial(n, q)
    return BivariatePoly({(n - 2 * r, r): top / (qcore.q_factorial(n - 2 * r, q) * math.factorial(r))
                          for r in range(n // 2 + 1)})



def q_hermite_operator_form(n: int, q: QParam | float) -> BivariatePoly:
    """exp(y qD_x**2) x**n, expanded term by term with jackson_derivative_poly."""
    n = __check_order(n)
    power = Polynomial([0.0] * n + [1.0])
    terms = {}
    r = 0
    while not (power.coef.size == 1 and power.coef[0] == 0.0):
        for i, c in enumerate(power.coef):
            if c != 0.0:
                terms[(i, r)] = c / math.factorial(r)
        power = jackson_derivative_poly(jackson_derivative_poly(power, q), q)
        r += 1
    return BivariatePoly(terms)



def q_hermite_recurrence_residuals(n: int, q: QParam | float, x: float, y: float) -> tuple[float, float, float]:
    """
    Residuals of the q-Hermite recurrences at (x, y), each divided by max(1, sum of |terms|):

        r1 = qD_x H_n - [n]_q H_{n-1}
        r2 = d/dx H_n - (n/x) H_n + (2y/x) [n]_q [n-1]_q H_{n-2}
        r3 = x d/dx H_n + 2y qD_x**2 H_n - n H_n

    Raises:
        ValueError: If n < 2 or x == 0.
    """
    n = __check_order(n)
    if n < 2:
        raise ValueError(f"recurrences need n >= 2, got {n}")
    if x == 0:
        raise ValueError("x must be non-zero")
    h_n, h_1, h_2 = q_hermite(n, q), q_hermite(n - 1, q), q_hermite(n - 2, q)
    bracket_n = qcore.q_number(n, q)
    lowering = bracket_n * qcore.q_number(n - 1, q)

    first = [h_n.q_d_x(q), h_1.scale(-bracket_n)]
    second = [h_n.d_x(), h_n.scale(-n / x), h_2.scale(2.0 * y / x * lowering)]
    third = [h_n.d_x().times_x(), h_n.q_d_x(q).q_d_x(q).times_y().scale(2.0), h_n.scale(-float(n))]
    return tuple(__scaled_residual(parts, x, y) for parts in (first, second, third))



def q_hermite_heat_residual(n: int, q: QParam | float) -> float:
    """Largest coefficient of d/dy H_n - qD_x**2 H_n, relative to the largest coefficient of H_n."""
    h = q_hermite(n, q)
    gap = h.d_y() - h.q_d_x(q).q_d_x(q)
    return gap.max_abs_coefficient() / max(h.max_abs_coefficient(), 1.0)



def q_hermite_genfun_residual(x: float, y: float, t: float, q: QParam | float, N: int = 30,
                              tol: ToleranceConfig | None = None) -> float:
    """
    |sum_{n<=N} t**n H_n(x, y) / [n]_q! - exp(y t**2) qe(-x t)|.

    The q-exponential is summed as a series, so x t must lie inside its gate.

    Raises:
        SeriesDivergence: If |x t| >= 1/(1+q).
    """
    q = as_qparam(q)
    N = __check_order(N)
    left = sum(t ** n * q_hermite(n, q).evaluate(x, y) / qcore.q_factorial(n, q) for n in range(N + 1))
    right = math.exp(y * t * t) * qfunctions.q_exp(-x * t, q, EvalMethod.SERIES, tol)
    return abs(left - right)



# ---- Private Functions ----

def __monomial_part(symbol: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    return symbol if exponent == 1 else f"{symbol}^{exponent}"



def __scaled_residual(parts: list[BivariatePoly], x: float, y: float) -> float:
    value = sum(p.evaluate(x, y) for p in parts)
    scale = max(1.0, sum(p.magnitude(x, y) for p in parts))
    return abs(value) / scale



def __check_order(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    return int(n)
