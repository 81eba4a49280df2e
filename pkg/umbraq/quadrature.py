"""
Improper integrals for the identity checks.

Integrands are called with 1-D numpy arrays of nodes and must return an array of the same
shape; wrap scalar functions with np.vectorize(..., otypes=[float]).
"""
import math
import logging
from enum import Enum
from typing import Callable
from functools import lru_cache
from dataclasses import dataclass
import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from umbraq.bin.config import ToleranceConfig, resolve_tolerance
from umbraq.bin.errors import ConfigError, NonConvergence, TailModelViolation
from umbraq.utilities import constants


logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]



@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool

    def __float__(self) -> float:
        return float(self.value)



class TailModel(str, Enum):
    EXPONENTIAL = "exponential"
    ALGEBRAIC = "algebraic"



@dataclass(frozen=True)
class TailPolicy:
    """
    Where to truncate an infinite range and how the integrand is assumed to decay beyond it.

    Args:
        cutoff (float): The truncation point, > 0.
        model (TailModel): EXPONENTIAL (f ~ exp(-rate*x)) or ALGEBRAIC (f ~ x**-power).
        power (float, optional): The algebraic decay power, > 1. Required for ALGEBRAIC.
        rate (float, optional): The exponential decay rate. Defaults to 1.
    """
    cutoff: float
    model: TailModel = TailModel.EXPONENTIAL
    power: float | None = None
    rate: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "model", TailModel(self.model))
        if not (self.cutoff > 0.0 and math.isfinite(self.cutoff)):
            raise ConfigError(f"cutoff must be positive and finite, got {self.cutoff!r}")
        if self.model is TailModel.ALGEBRAIC and (self.power is None or not self.power > 1.0):
            raise ConfigError(f"algebraic tails need power > 1, got {self.power!r}")
        if not self.rate > 0.0:
            raise ConfigError(f"rate must be positive, got {self.rate!r}")

    @classmethod
    def exponential(cls, cutoff: float = constants.LAPLACE_CUTOFF, rate: float = 1.0) -> "TailPolicy":
        return cls(cutoff, TailModel.EXPONENTIAL, rate=rate)

    @classmethod
    def algebraic(cls, power: float, cutoff: float) -> "TailPolicy":
        return cls(cutoff, TailModel.ALGEBRAIC, power=power)

    @classmethod
    def fit(cls, f: Integrand, model: TailModel | str = TailModel.ALGEBRAIC, power: float = 2.0,
            abs_tol: float = 1e-10, symmetric: bool = True,
            start: float = constants.ALGEBRAIC_CUTOFF_START,
            max_cutoff: float = constants.ALGEBRAIC_CUTOFF_MAX) -> "TailPolicy":
        """
        Doubles the cutoff from `start` until the declared tail estimate drops below abs_tol / 10.

        Args:
            f (Integrand): The vectorized integrand.
            model (TailModel | str): The decay model. Defaults to algebraic.
            power (float): The algebraic decay power. Defaults to 2.
            abs_tol (float): The tail size to reach.
            symmetric (bool): Also sample f at -cutoff. Defaults to True.
        """
        model = TailModel(model)
        cutoff = start
        while cutoff < max_cutoff:
            edge = np.array([cutoff, -cutoff]) if symmetric else np.array([cutoff])
            peak = float(np.max(np.abs(f(edge))))
            tail = peak * cutoff / (power - 1.0) if model is TailModel.ALGEBRAIC else peak
            if tail < 0.1 * abs_tol:
                break
            cutoff *= 2.0
        cutoff = min(cutoff, max_cutoff)
        logger.debug("fitted %s tail cutoff %.4g", model.value, cutoff)
        if model is TailModel.ALGEBRAIC:
            return cls.algebraic(power, cutoff)
        return cls.exponential(cutoff)



def laplace_integral(f: Integrand, tol: ToleranceConfig | None = None,
                     cutoff: float = constants.LAPLACE_CUTOFF) -> QuadratureResult:
    """
    The Laplace (Borel) integral int_0^inf exp(-s) f(s) ds.

    A Gauss-Laguerre pair of orders 32 and 64 is tried first; when the two disagree by more than
    a tenth of the tolerance, the integral is recomputed adaptively on [0, cutoff] in the variable
    u = sqrt(s), which also absorbs integrable s**-1/2 behaviour at the origin. Beyond the cutoff the
    exp(-s) weight is integrated analytically against f(cutoff).

    Args:
        f (Integrand): Vectorized, continuous on (0, inf), at most polynomial growth.
        tol (ToleranceConfig, optional): Defaults to get_default_tolerance().
        cutoff (float, optional): Truncation point of the adaptive stage. Defaults to 50.

    Returns:
        QuadratureResult: The converged result.

    Raises:
        NonConvergence: If the error estimate stalls above max(abs_tol, rel_tol*|value|).

    Example:
        >>> laplace_integral(lambda s: s**3).value
        6.0
    """
    tol = resolve_tolerance(tol)
    evaluations = 0
    estimates = []
    for order in constants.LAGUERRE_ORDERS:
        nodes, weights = __laguerre_rule(order)
        values = np.asarray(f(nodes), dtype=float)
        evaluations += order
        estimates.append(float(weights @ values))

    seed = estimates[-1]
    seed_error = abs(estimates[-1] - estimates[-2])
    if math.isfinite(seed) and seed_error <= 0.1 * max(tol.abs_tol, tol.rel_tol * abs(seed)):
        return QuadratureResult(seed, max(seed_error, constants.EPS * abs(seed)), evaluations, True)

    def mapped(u: np.ndarray) -> np.ndarray:
        s = u * u
        return 2.0 * u * np.exp(-s) * np.asarray(f(s), dtype=float)

    root = math.sqrt(cutoff)
    breakpoints = np.unique(np.concatenate(([0.0], np.geomspace(1e-4, 1.0, 9), np.arange(1.5, root, 1.0), [root])))
    body = __adaptive(mapped, breakpoints, tol)

    edge = np.abs(np.asarray(f(np.array([cutoff, 2.0 * cutoff])), dtype=float))
    tail = math.exp(-cutoff) * float(edge[0])
    tail_bound = math.exp(-cutoff) * float(edge.max()) * 2.0
    value = body.value + tail
    error = body.abs_error_estimate + tail_bound
    result = QuadratureResult(value, error, body.evaluations + evaluations + 2, body.converged)
    __raise_if_stalled(result, tol, "laplace_integral")
    return result



def real_line_integral(f: Integrand, tail: TailPolicy, tol: ToleranceConfig | None = None) -> QuadratureResult:
    """
    int_{-inf}^{inf} f(x) dx: adaptive Gauss-Kronrod (scipy.integrate.quad) on [-cutoff, cutoff] over geometric
    breakpoints, plus the tail estimate of the declared decay model on both sides.

    Raises:
        NonConvergence: If the adaptive stage stalls above tolerance.
        TailModelViolation: If f decays slower than the declared model by more than a factor 10.

    Example:
        >>> real_line_integral(lambda x: 1 / (1 + x**2), TailPolicy.algebraic(2, 1e4)).value
        3.14159265358...
    """
    tol = resolve_tolerance(tol)
    right = __geometric_breakpoints(tail.cutoff)
    breakpoints = np.concatenate((-right[:0:-1], right))
    body = __adaptive(f, breakpoints, tol)

    upper, upper_bound, n_upper = __tail_estimate(f, tail, tol, side=1.0)
    lower, lower_bound, n_lower = __tail_estimate(f, tail, tol, side=-1.0)
    result = QuadratureResult(body.value + upper + lower,
                              body.abs_error_estimate + upper_bound + lower_bound,
                              body.evaluations + n_upper + n_lower,
                              body.converged)
    __raise_if_stalled(result, tol, "real_line_integral")
    return result



def halfline_integral(f: Integrand, tail: TailPolicy, tol: ToleranceConfig | None = None) -> QuadratureResult:
    """int_0^inf f(x) dx, with the same machinery as real_line_integral."""
    tol = resolve_tolerance(tol)
    body = __adaptive(f, __geometric_breakpoints(tail.cutoff), tol)
    upper, upper_bound, n_upper = __tail_estimate(f, tail, tol, side=1.0)
    result = QuadratureResult(body.value + upper, body.abs_error_estimate + upper_bound,
                              body.evaluations + n_upper, body.converged)
    __raise_if_stalled(result, tol, "halfline_integral")
    return result



def finite_integral(f: Integrand, a: float, b: float, tol: ToleranceConfig | None = None,
                    breakpoints=None) -> QuadratureResult:
    """
    int_a^b f(x) dx by adaptive Gauss-Kronrod, through scipy.integrate.quad.

    Args:
        f (Integrand): The vectorized integrand.
        a (float): Lower limit.
        b (float): Upper limit, b > a.
        tol (ToleranceConfig, optional): Defaults to get_default_tolerance().
        breakpoints (array_like, optional): Interior points where f is known to change behaviour.
    """
    tol = resolve_tolerance(tol)
    if not b > a:
        raise ValueError(f"need a < b, got a={a!r}, b={b!r}")
    points = [a, b] if breakpoints is None else [a, *[p for p in breakpoints if a < p < b], b]
    result = __adaptive(f, np.unique(np.asarray(points, dtype=float)), tol)
    __raise_if_stalled(result, tol, "finite_integral")
    return result



def oscillatory_halfline_integral(f: Integrand, tail: TailPolicy, tol: ToleranceConfig | None = None,
                                  samples: int = constants.OSCILLATORY_SAMPLES) -> QuadratureResult:
    """
    int_0^inf f(x) dx for integrands that change sign.

    The zeros of f on [0, cutoff] are bracketed on a uniform grid of `samples` intervals and refined
    with brentq; each lobe between consecutive zeros is integrated separately. When the lobes still
    alternate at the cutoff, the partial sums are extrapolated with Aitken's delta-squared process,
    otherwise the tail model supplies the remainder.

    Raises:
        NonConvergence: If a lobe integral stalls, or the total error is above tolerance.
    """
    tol = resolve_tolerance(tol)
    cutoff = tail.cutoff
    grid = np.linspace(0.0, cutoff, int(samples) + 1)
    values = np.asarray(f(grid), dtype=float)
    evaluations = grid.size

    def scalar(t: float) -> float:
        return float(np.asarray(f(np.array([t])), dtype=float)[0])

    roots = [float(grid[i]) for i in np.nonzero(values[1:-1] == 0.0)[0] + 1]
    for i in np.nonzero(values[:-1] * values[1:] < 0.0)[0]:
        roots.append(brentq(scalar, grid[i], grid[i + 1], xtol=1e-14, rtol=4 * constants.EPS))
    points = np.unique(np.concatenate(([0.0], roots)))
    points = points[points < cutoff]

    lobe_tol = tol.with_overrides(abs_tol=tol.abs_tol / max(len(points), 1))
    lobes = []
    lobe_error = 0.0
    converged = True
    for a, b in zip(points[:-1], points[1:]):
        piece = __adaptive(f, np.array([a, b]), lobe_tol)
        lobes.append(piece.value)
        lobe_error += piece.abs_error_estimate
        evaluations += piece.evaluations
        converged = converged and piece.converged

    # the segment from the last zero to the cutoff is not a complete lobe
    closing = __adaptive(f, np.array([points[-1], cutoff]), lobe_tol)
    evaluations += closing.evaluations
    partial = np.cumsum(lobes) if lobes else np.zeros(1)
    total = float(partial[-1])
    target = max(tol.abs_tol, tol.rel_tol * abs(total + closing.value))
    alternating = len(lobes) >= 4 and all(lobes[-i] * lobes[-i - 1] < 0.0 for i in range(1, 4))

    if alternating and abs(lobes[-1]) > target:
        accelerated = __aitken(partial[-4:])
        value = float(accelerated[-1])
        error = lobe_error + abs(float(accelerated[-1] - accelerated[-2]))
        logger.debug("aitken extrapolation over %d lobes: %.12g -> %.12g", len(lobes), total, value)
    else:
        remainder, remainder_bound, n_tail = __tail_estimate(f, tail, tol, side=1.0)
        value = total + closing.value + remainder
        error = lobe_error + closing.abs_error_estimate + remainder_bound
        evaluations += n_tail
        converged = converged and closing.converged

    result = QuadratureResult(value, error, evaluations, converged)
    __raise_if_stalled(result, tol, "oscillatory_halfline_integral")
    return result



# ---- Private Functions ----

@lru_cache(maxsize=8)
def __laguerre_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.laguerre.laggauss(order)



def __adaptive(f: Integrand, breakpoints: np.ndarray, tol: ToleranceConfig) -> QuadratureResult:
    """scipy's QUADPACK on [breakpoints[0], breakpoints[-1]], splitting first at the interior breakpoints."""
    a, b = float(breakpoints[0]), float(breakpoints[-1])
    interior = [float(p) for p in breakpoints[1:-1] if a < p < b]
    trial = np.array([a + (b - a) / 3.0, a + 2.0 * (b - a) / 3.0])
    shape = np.shape(f(trial))
    if shape != trial.shape:
        raise ValueError(f"integrand returned shape {shape} for {trial.shape} nodes")

    def scalar(t: float) -> float:
        return float(np.asarray(f(np.array([t])), dtype=float)[0])

    limit = max(tol.max_evaluations // constants.QUAD_NODES_PER_INTERVAL, len(interior) + 4)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = quad(scalar, a, b, epsabs=tol.abs_tol, epsrel=tol.rel_tol, limit=limit,
                   points=interior or None, full_output=1)
    value, error, info = float(out[0]), float(out[1]), out[2]
    # a fourth item is the QUADPACK warning, present only when ier > 0
    flagged = len(out) > 3
    if flagged:
        logger.debug("quad on [%g, %g]: %s", a, b, out[3])
    target = max(tol.abs_tol, tol.rel_tol * abs(value))
    converged = not flagged and math.isfinite(value) and math.isfinite(error) and error <= target
    return QuadratureResult(value, error, int(info["neval"]) + trial.size, converged)



def __geometric_breakpoints(cutoff: float) -> np.ndarray:
    """0 followed by cutoff, cutoff/2, cutoff/4, ... down to at most 1/2, in increasing order."""
    levels = max(0, math.ceil(math.log2(max(cutoff, 0.5) / 0.5)))
    scaled = cutoff / 2.0 ** np.arange(levels, -1, -1)
    return np.concatenate(([0.0], scaled))



def __tail_estimate(f: Integrand, tail: TailPolicy, tol: ToleranceConfig, side: float) -> tuple[float, float, int]:
    """Estimate and error bound of int over |x| > cutoff on one side, from f at the cutoff and one sample further out."""
    c = tail.cutoff
    far = 2.0 * c if tail.model is TailModel.ALGEBRAIC else c + 1.0 / tail.rate
    near_value, far_value = (float(v) for v in np.asarray(f(side * np.array([c, far])), dtype=float))
    reach = c if tail.model is TailModel.ALGEBRAIC else 1.0 / tail.rate
    if max(abs(near_value), abs(far_value)) * max(reach, 1.0) < 1e-3 * tol.abs_tol:
        return 0.0, abs(near_value) * max(reach, 1.0), 2

    if tail.model is TailModel.ALGEBRAIC:
        decay = 2.0 ** -tail.power
        nominal = near_value * c / (tail.power - 1.0)
    else:
        decay = math.exp(-1.0)
        nominal = near_value / tail.rate
    if abs(far_value) > constants.TAIL_VIOLATION_FACTOR * abs(near_value) * decay:
        raise TailModelViolation(f"integrand decays slower than the declared {tail.model.value} model at {side * c:g}")

    estimate = nominal
    if near_value * far_value > 0.0 and abs(far_value) < abs(near_value):
        log_ratio = math.log(near_value / far_value)
        if tail.model is TailModel.ALGEBRAIC:
            empirical_power = log_ratio / math.log(2.0)
            if empirical_power > 1.0:
                estimate = near_value * c / (empirical_power - 1.0)
        else:
            estimate = near_value / (log_ratio * tail.rate)
        bound = abs(estimate - nominal) + 4.0 * constants.EPS * abs(estimate)
    else:
        bound = abs(nominal)
    return estimate, bound, 2



def __aitken(partial: np.ndarray) -> np.ndarray:
    """Aitken delta-squared transform of a sequence of partial sums."""
    s0, s1, s2 = partial[:-2], partial[1:-1], partial[2:]
    denominator = s2 - 2.0 * s1 + s0
    safe = np.where(denominator == 0.0, 1.0, denominator)
    return np.where(denominator == 0.0, s2, s2 - (s2 - s1) ** 2 / safe)



def __raise_if_stalled(result: QuadratureResult, tol: ToleranceConfig, where: str) -> None:
    target = max(tol.abs_tol, tol.rel_tol * abs(result.value))
    if not result.converged or result.abs_error_estimate > target:
        raise NonConvergence(f"{where} stalled at error {result.abs_error_estimate:.3e} "
                             f"above tolerance {target:.3e}", result)
