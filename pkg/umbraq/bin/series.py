import logging
from typing import Callable
from dataclasses import dataclass
import numpy as np
from umbraq.bin.config import ToleranceConfig
from umbraq.bin.errors import SeriesDivergence
from umbraq.utilities import constants


logger = logging.getLogger(__name__)



@dataclass(frozen=True)
class SeriesResult:
    """Elementwise partial sums together with the largest term met, for rounding estimates."""
    value: np.ndarray
    peak: np.ndarray
    terms_used: int

    @property
    def rounding_error(self) -> np.ndarray:
        return constants.SERIES_ROUNDING_FACTOR * constants.EPS * self.peak * np.sqrt(max(self.terms_used, 1))



def sum_ratio_series(first, ratio: Callable[[int], float], x, tol: ToleranceConfig, start: int = 0) -> SeriesResult:
    """
    Sums t_start + t_{start+1} + ... elementwise over x, where t_{r+1} = t_r * x * ratio(r).

    Summation stops once two successive terms fall below max(abs_tol, eps*|sum|) while the
    ratio test |x * ratio(r)| < 1 confirms decay, for every element.

    Args:
        first (array_like): The term t_start, broadcastable against x.
        ratio (Callable[[int], float]): The x-free part of t_{r+1} / t_r.
        x (array_like): The series argument.
        tol (ToleranceConfig): Supplies abs_tol and max_series_terms.
        start (int, optional): Index of the first term. Defaults to 0.

    Raises:
        SeriesDivergence: If some element has not converged within max_series_terms.
    """
    x = np.asarray(x, dtype=float)
    term = np.array(np.broadcast_to(np.asarray(first, dtype=float), x.shape), dtype=float)
    total = term.copy()
    peak = np.abs(term)
    quiet = np.zeros(x.shape, dtype=int)

    r = start
    for used in range(1, tol.max_series_terms + 1):
        rho = ratio(r)
        step = x * rho
        term = term * step
        total = total + term
        r += 1
        magnitude = np.abs(term)
        np.maximum(peak, magnitude, out=peak)
        if not np.all(np.isfinite(total)):
            raise SeriesDivergence(f"series overflowed after {used} terms")

        threshold = np.maximum(tol.abs_tol, constants.EPS * np.abs(total))
        settled = (magnitude <= threshold) & (np.abs(step) < 1.0)
        quiet = np.where(settled, quiet + 1, 0)
        if np.all(quiet >= 2):
            logger.debug("series converged after %d terms", used)
            return SeriesResult(total, peak, used)

    raise SeriesDivergence(f"series did not converge within {tol.max_series_terms} terms")
