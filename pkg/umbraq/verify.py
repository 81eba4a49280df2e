"""
Numerical confirmation of the closed-form identities.

Every check integrates (or otherwise evaluates) a concretely computed q-function and compares the
result with a closed form computed through qcore alone, so agreement is a genuine cross-check.
"""
import math
import time
import logging
from dataclasses import asdict, dataclass, replace
from concurrent.futures import ProcessPoolExecutor
import numpy as np
from umbraq import jackson, qcore, qfunctions, qtrig, quadrature, tsallis
from umbraq.bin.config import QParam, ToleranceConfig, as_qparam, get_default_tolerance
from umbraq.bin.errors import ConfigError
from umbraq.qfunctions import EvalMethod
from umbraq.quadrature import TailModel, TailPolicy
from umbraq.utilities import constants


logger = logging.getLogger(__name__)

INTEGRAL_IDENTITIES = ("borel_chain", "power_integral[m=2]", "power_integral[m=3]", "power_integral[m=4]",
                       "q_fresnel_cos", "q_fresnel_sin", "q_gaussian_integral", "tricomi_gaussian")



@dataclass(frozen=True)
class IdentityReport:
    """
    The outcome of one identity check.

    rel_residual is abs_residual / |rhs_closed|, or abs_residual itself when the closed side is 0;
    passed holds exactly when rel_residual < tolerance. q is None for q-independent checks.
    """
    identity_id: str
    q: float | None
    lhs_numeric: float
    rhs_closed: float
    abs_residual: float
    rel_residual: float
    passed: bool
    runtime_ms: int
    tolerance: float
    note: str = ""

    def with_tolerance(self, tolerance: float) -> "IdentityReport":
        """The same report judged against another pass threshold."""
        return replace(self, tolerance=tolerance, passed=bool(self.rel_residual < tolerance))

    def to_dict(self) -> dict:
        return asdict(self)



@dataclass(frozen=True)
class SuiteConfig:
    """
    Settings of run_suite.

    Args:
        tolerance_override (float, optional): Replaces every identity's pass threshold. The numerical
            work is unchanged, so a tight override exposes the quadrature-limited identities.
        workers (int): Worker processes; 1 runs the checks in-process. Defaults to 1.
        gaussian_cutoff_cap (float): Largest truncation point tried for the q-Gaussian type integrals.
    """
    tolerance_override: float | None = None
    workers: int = 1
    gaussian_cutoff_cap: float = constants.GAUSSIAN_CUTOFF_CAP

    def __post_init__(self):
        if self.tolerance_override is not None and not self.tolerance_override > 0:
            raise ConfigError(f"tolerance_override must be positive, got {self.tolerance_override!r}")
        if isinstance(self.workers, bool) or int(self.workers) != self.workers or self.workers < 1:
            raise ConfigError(f"workers must be a positive integer, got {self.workers!r}")
        if not self.gaussian_cutoff_cap > constants.ALGEBRAIC_CUTOFF_START:
            raise ConfigError(f"gaussian_cutoff_cap must exceed {constants.ALGEBRAIC_CUTOFF_START}")



# ---- closed forms ----

def gaussian_integral_closed(q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """int qe(x**2) dx over the real line = pi / sqrt(pi_q)."""
    return math.pi / math.sqrt(qcore.pi_q(q, tol))



def fresnel_closed(q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """int_0^inf cos_q(y**2) dy = int_0^inf sin_q(y**2) dy = pi / sqrt(8 pi_q)."""
    return math.pi / math.sqrt(8.0 * qcore.pi_q(q, tol))



def power_integral_closed(m: int, q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """int_0^inf qe(x**m) dx = pi / (m sin(pi/m) qGamma(1 - 1/m))."""
    m = __check_power(m)
    return math.pi / (m * math.sin(math.pi / m) * qcore.q_gamma(1.0 - 1.0 / m, q, tol).value)



def power_integral_printed(m: int, q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """The alternative form qGamma((m-1)/m) / m; it disagrees with the q-Gaussian integral at m = 2."""
    m = __check_power(m)
    return qcore.q_gamma((m - 1.0) / m, q, tol).value / m



def tricomi_gaussian_closed(q: QParam | float, tol: ToleranceConfig | None = None) -> float:
    """int C(x**2) dx over the real line = sqrt(pi / pi_q), C the (q,1)-Tricomi function."""
    return math.sqrt(math.pi / qcore.pi_q(q, tol))



# ---- integral identities ----

def check_q_gaussian_integral(q: QParam | float, tol: ToleranceConfig | None = None,
                              cutoff_cap: float = constants.GAUSSIAN_CUTOFF_CAP) -> IdentityReport:
    """
    The q-Gaussian integral: real_line_integral of qe(x**2), evaluated through its Laplace integral
    representation, against pi / sqrt(pi_q).

    Args:
        q (QParam | float): The deformation parameter, q <= 0.95.
        tol (ToleranceConfig, optional): The outer quadrature tolerance; the q-exponential is
            evaluated ten times tighter. Defaults to the suite tolerances.
        cutoff_cap (float, optional): Largest truncation point tried.

    Raises:
        QParamError: If q > 0.95.
        NonConvergence: If a quadrature stalls.
    """
    q = QParam(float(q), q_max=constants.GAUSSIAN_Q_MAX)
    started = time.perf_counter()
    inner, outer = __tolerances(tol)
    integrand = np.vectorize(lambda x: qfunctions.q_exp(x * x, q, EvalMethod.BOREL_INTEGRAL, inner), otypes=[float])
    tail = TailPolicy.fit(integrand, TailModel.ALGEBRAIC, power=2.0, abs_tol=outer.abs_tol, max_cutoff=cutoff_cap)
    result = quadrature.real_line_integral(integrand, tail, outer)
    note = f"cutoff {tail.cutoff:g}, quadrature error {result.abs_error_estimate:.2e}"
    return __report("q_gaussian_integral", q.q, result.value, gaussian_integral_closed(q),
                    constants.SMOOTH_IDENTITY_TOL, started, note)



def check_q_fresnel(q: QParam | float, tol: ToleranceConfig | None = None,
                    cutoff_cap: float = constants.GAUSSIAN_CUTOFF_CAP) -> tuple[IdentityReport, IdentityReport]:
    """
    The complete q-Fresnel integrals: int_0^inf cos_q(y**2) dy and int_0^inf sin_q(y**2) dy, each
    integrated lobe by lobe between the zeros of the integrand, against pi / sqrt(8 pi_q).

    Raises:
        QParamError: If q > 0.9.
        NonConvergence: On an oscillatory stall.
    """
    q = QParam(float(q), q_max=constants.OSCILLATORY_Q_MAX)
    inner, outer = __tolerances(tol)
    rhs = fresnel_closed(q)
    reports = []
    for name, function in (("cos", qfunctions.q_cos), ("sin", qfunctions.q_sin)):
        started = time.perf_counter()
        integrand = np.vectorize(lambda y, f=function: f(y * y, q, inner), otypes=[float])
        tail = TailPolicy.fit(integrand, TailModel.ALGEBRAIC, power=2.0, abs_tol=outer.abs_tol,
                              symmetric=False, max_cutoff=cutoff_cap)
        result = quadrature.oscillatory_halfline_integral(integrand, tail, outer, samples=constants.FRESNEL_SAMPLES)
        note = f"cutoff {tail.cutoff:g}, quadrature error {result.abs_error_estimate:.2e}"
        reports.append(__report(f"q_fresnel_{name}", q.q, result.value, rhs,
                                constants.OSCILLATORY_IDENTITY_TOL, started, note))
    return reports[0], reports[1]



def check_power_integral(m: int, q: QParam | float, tol: ToleranceConfig | None = None,
                         cutoff_cap: float = constants.GAUSSIAN_CUTOFF_CAP) -> IdentityReport:
    """
    halfline_integral of qe(x**m) against pi / (m sin(pi/m) qGamma(1 - 1/m)).

    The note records the alternative value qGamma((m-1)/m) / m for comparison.
    """
    m = __check_power(m)
    q = QParam(float(q), q_max=constants.GAUSSIAN_Q_MAX)
    started = time.perf_counter()
    inner, outer = __tolerances(tol)
    integrand = np.vectorize(lambda x: qfunctions.q_exp(x ** m, q, EvalMethod.BOREL_INTEGRAL, inner), otypes=[float])
    tail = TailPolicy.fit(integrand, TailModel.ALGEBRAIC, power=2.0, abs_tol=outer.abs_tol,
                          symmetric=False, max_cutoff=cutoff_cap)
    result = quadrature.halfline_integral(integrand, tail, outer)
    note = f"qGamma((m-1)/m)/m = {power_integral_printed(m, q):.12g}"
    return __report(f"power_integral[m={m}]", q.q, result.value, power_integral_closed(m, q),
                    constants.SMOOTH_IDENTITY_TOL, started, note)



def check_tricomi_gaussian(q: QParam | float, tol: ToleranceConfig | None = None,
                           cutoff_cap: float = constants.GAUSSIAN_CUTOFF_CAP) -> IdentityReport:
    """real_line_integral of C(x**2), C the (q,1)-Tricomi function, against sqrt(pi / pi_q)."""
    q = QParam(float(q), q_max=constants.GAUSSIAN_Q_MAX)
    started = time.perf_counter()
    inner, outer = __tolerances(tol)

    def integrand(x: np.ndarray) -> np.ndarray:
        return qfunctions.tricomi_q1(x * x, q, inner)

    tail = TailPolicy.fit(integrand, TailModel.EXPONENTIAL, abs_tol=outer.abs_tol, max_cutoff=cutoff_cap)
    result = quadrature.real_line_integral(integrand, tail, outer)
    note = f"cutoff {tail.cutoff:g}, quadrature error {result.abs_error_estimate:.2e}"
    return __report("tricomi_gaussian", q.q, result.value, tricomi_gaussian_closed(q),
                    constants.SMOOTH_IDENTITY_TOL, started, note)



def check_borel_chain(q: QParam | float, tol: ToleranceConfig | None = None) -> IdentityReport:
    """
    The Borel chain int_0^inf exp(-s) [int C(x**2 s) dx] ds = pi / sqrt(pi_q), by nested quadrature.

    The inner integral behaves like s**-1/2, which the Laplace integrator absorbs in its sqrt(s) variable.
    """
    q = QParam(float(q), q_max=constants.OSCILLATORY_Q_MAX)
    started = time.perf_counter()
    inner, outer = __tolerances(tol)

    def gaussian_slice(s: float) -> float:
        def integrand(x: np.ndarray) -> np.ndarray:
            return qfunctions.tricomi_q1(x * x * s, q, inner)
        tail = TailPolicy.fit(integrand, TailModel.EXPONENTIAL, abs_tol=inner.abs_tol)
        return quadrature.real_line_integral(integrand, tail, inner).value

    result = quadrature.laplace_integral(np.vectorize(gaussian_slice, otypes=[float]), outer)
    rhs = tricomi_gaussian_closed(q) * math.sqrt(math.pi)
    note = f"{result.evaluations} inner integrals, quadrature error {result.abs_error_estimate:.2e}"
    return __report("borel_chain", q.q, result.value, rhs, constants.OSCILLATORY_IDENTITY_TOL, started, note)



def check_tsallis_integral(Q: float, tol: ToleranceConfig | None = None) -> IdentityReport:
    """The Tsallis Gaussian integral, closed Gamma ratio against adaptive quadrature."""
    started = time.perf_counter()
    closed, numeric = tsallis.tsallis_gaussian_integral(Q, tol)
    return __report(f"tsallis_gaussian_integral[Q={Q:g}]", None, numeric.value, closed,
                    constants.TSALLIS_IDENTITY_TOL, started)



# ---- structural identities ----

def check_qtrig_identities(q: QParam | float, cfg: qtrig.TrigProductConfig | None = None) -> list[IdentityReport]:
    """
    The structure of sine-q and cosine-q: exact zeros, the unit value at 1/2, the half shift between
    sine and cosine, the q-Gamma duality, the k = 1 half-integer value -q**-1/2 and the twisted parity
    sin_q(-x) = -q**-x sin_q(x) (with plain odd parity visibly broken).
    """
    q = as_qparam(q)
    cfg = cfg or qtrig.TrigProductConfig()
    reports = []

    started = time.perf_counter()
    zeros = max(abs(qtrig.sin_q_scaled(float(k), q, cfg)) for k in range(6))
    reports.append(__report("qtrig_zeros", q.q, zeros, 0.0, constants.EXACT_TOL, started, "k = 0..5"))

    started = time.perf_counter()
    reports.append(__report("qtrig_half", q.q, qtrig.sin_q_scaled(0.5, q, cfg), 1.0,
                            constants.EXACT_RESIDUAL_TOL, started))

    started = time.perf_counter()
    shift = max(abs(qtrig.sin_cos_shift_residual(x, q, cfg)) for x in np.linspace(0.0, 2.0, 21))
    reports.append(__report("qtrig_shift", q.q, shift, 0.0, constants.PRODUCT_IDENTITY_TOL, started))

    started = time.perf_counter()
    worst, worst_lhs, rhs = 0.0, 0.0, qcore.pi_q(q)
    for x in np.linspace(0.1, 0.9, 9):
        lhs = qtrig.sin_q_scaled(x, q, cfg) * qcore.q_gamma(x, q).value * qcore.q_gamma(1.0 - x, q).value
        if abs(lhs - rhs) >= worst:
            worst, worst_lhs = abs(lhs - rhs), lhs
    reports.append(__report("qtrig_duality", q.q, worst_lhs, rhs, constants.PRODUCT_IDENTITY_TOL, started))

    started = time.perf_counter()
    records = qtrig.extremum_scan(q, 3, cfg)
    drift = ", ".join(f"k={r.k}: {r.location:.6f}" for r in records)
    reports.append(__report("qtrig_extremum", q.q, records[1].half_integer_value, -q.q ** -0.5,
                            constants.DERIVATIVE_IDENTITY_TOL, started, f"extremum locations {drift}"))

    started = time.perf_counter()
    x = 0.3
    forward, backward = qtrig.sin_q_scaled(x, q, cfg), qtrig.sin_q_scaled(-x, q, cfg)
    odd_gap = abs(backward + forward)
    report = __report("qtrig_parity", q.q, backward, -q.q ** -x * forward, constants.PRODUCT_IDENTITY_TOL,
                      started, f"|sin(-x) + sin(x)| = {odd_gap:.3e} at x = {x}")
    if odd_gap <= 1e-3:
        report = replace(report, passed=False)
    reports.append(report)
    return reports



def check_jackson_battery(q: QParam | float, tol: ToleranceConfig | None = None) -> list[IdentityReport]:
    """Eigen-equation residuals, the q-Hermite recurrences, the q-heat property, the operator form and the generating function."""
    q = as_qparam(q)
    reports = []

    started = time.perf_counter()
    reports.append(__report("jackson_q_exp_eigen", q.q, jackson.q_exp_eigen_residual(0.5, 0.2, q, tol), 0.0,
                            constants.EIGEN_RESIDUAL_TOL, started))
    started = time.perf_counter()
    reports.append(__report("jackson_tricomi_eigen_q1", q.q, jackson.tricomi_eigen_residual("q1", 1.0, 0.5, q, tol),
                            0.0, constants.FD_EIGEN_RESIDUAL_TOL, started))
    started = time.perf_counter()
    reports.append(__report("jackson_tricomi_eigen_qq", q.q, jackson.tricomi_eigen_residual("qq", 1.0, 0.5, q, tol),
                            0.0, constants.EIGEN_RESIDUAL_TOL, started))

    orders = range(2, constants.HERMITE_MAX_ORDER + 1)
    started = time.perf_counter()
    recurrences = max(max(jackson.q_hermite_recurrence_residuals(n, q, 2.0, -1.0)) for n in orders)
    reports.append(__report("jackson_hermite_recurrences", q.q, recurrences, 0.0, constants.EXACT_RESIDUAL_TOL,
                            started, f"n = 2..{constants.HERMITE_MAX_ORDER}"))

    started = time.perf_counter()
    heat = max(jackson.q_hermite_heat_residual(n, q) for n in range(constants.HERMITE_MAX_ORDER + 1))
    reports.append(__report("jackson_hermite_heat", q.q, heat, 0.0, constants.EXACT_RESIDUAL_TOL, started))

    started = time.perf_counter()
    gap = 0.0
    for n in range(constants.HERMITE_MAX_ORDER + 1):
        closed = jackson.q_hermite(n, q)
        gap = max(gap, (closed - jackson.q_hermite_operator_form(n, q)).max_abs_coefficient()
                  / max(closed.max_abs_coefficient(), 1.0))
    reports.append(__report("jackson_hermite_operator_form", q.q, gap, 0.0, constants.EXACT_RESIDUAL_TOL, started))

    started = time.perf_counter()
    reports.append(__report("jackson_hermite_genfun", q.q, jackson.q_hermite_genfun_residual(0.5, 0.3, 0.1, q, 30, tol),
                            0.0, 1e-8, started, "x = 0.5, y = 0.3, t = 0.1, N = 30"))
    return reports



def check_q_gaussian_derivatives(q: QParam | float, tol: ToleranceConfig | None = None) -> IdentityReport:
    """The Hermite/q-Bessel expansion of the q-Gaussian derivatives against the differentiated Taylor series."""
    q = as_qparam(q)
    started = time.perf_counter()
    worst = 0.0
    for n in range(6):
        for x in (0.3, 1.0, 2.0):
            gap = abs(qfunctions.q_gaussian_derivative(n, x, q, tol) - qfunctions.q_gaussian_derivative_series(n, x, q, tol))
            worst = max(worst, gap)
    return __report("q_gaussian_derivatives", q.q, worst, 0.0, constants.DERIVATIVE_IDENTITY_TOL, started,
                    "n = 0..5, x in {0.3, 1, 2}")



def check_continuity(reports: list[IdentityReport]) -> list[IdentityReport]:
    """
    Guards the closed forms of the integral identities against truncation blowups: along the q grid,
    the relative jump of rhs_closed between neighbouring q values must stay below 10%.

    Returns:
        list[IdentityReport]: One report per integral identity seen at two or more q values.
    """
    out = []
    for identity in INTEGRAL_IDENTITIES:
        started = time.perf_counter()
        points = sorted((r.q, r.rhs_closed) for r in reports
                        if r.identity_id == identity and r.q is not None and math.isfinite(r.rhs_closed))
        if len(points) < 2:
            continue
        jumps = [abs(b - a) / max(abs(a), constants.EPS) for (_, a), (_, b) in zip(points[:-1], points[1:])]
        out.append(__report(f"continuity[{identity}]", None, max(jumps), 0.0, constants.CONTINUITY_JUMP, started,
                            "q grid " + ", ".join(f"{p:g}" for p, _ in points)))
    return out



def run_suite(q_list, config: SuiteConfig | None = None) -> list[IdentityReport]:
    """
    Runs every identity check over the q grid and aggregates the reports.

    Checks whose q range excludes a grid value are skipped for it. A check that raises is reported as
    failed with the exception text in its note, never propagated.

    Args:
        q_list (iterable of float): The q grid; each value is validated as a QParam.
        config (SuiteConfig, optional): Tolerance override and worker count.

    Returns:
        list[IdentityReport]: Sorted by identity_id, then q. Empty for an empty grid.

    Raises:
        QParamError: If a grid value is not a valid q.
    """
    config = config or SuiteConfig()
    q_values = [as_qparam(q).q for q in q_list]
    if not q_values:
        return []

    tasks = __suite_tasks(q_values, config)
    logger.info("running %d identity checks over q = %s with %d worker(s)", len(tasks), q_values, config.workers)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            batches = list(pool.map(__run_task, tasks))
    else:
        batches = [__run_task(task) for task in tasks]

    reports = [report for batch in batches for report in batch]
    if config.tolerance_override is not None:
        reports = [report.with_tolerance(config.tolerance_override) for report in reports]
    reports += check_continuity(reports)
    failed = sum(not report.passed for report in reports)
    logger.info("%d of %d identity reports passed", len(reports) - failed, len(reports))
    return sorted(reports, key=lambda r: (r.identity_id, -1.0 if r.q is None else r.q))



# ---- Private Functions ----

def __tolerances(tol: ToleranceConfig | None) -> tuple[ToleranceConfig, ToleranceConfig]:
    """(inner, outer) tolerances of a nested evaluation."""
    if tol is None:
        base = get_default_tolerance()
        return (base.with_overrides(rel_tol=constants.VERIFY_INNER_REL_TOL, abs_tol=constants.VERIFY_INNER_ABS_TOL),
                base.with_overrides(rel_tol=constants.VERIFY_OUTER_REL_TOL, abs_tol=constants.VERIFY_OUTER_ABS_TOL))
    return tol.with_overrides(rel_tol=tol.rel_tol / 10.0, abs_tol=tol.abs_tol / 10.0), tol



def __report(identity_id: str, q: float | None, lhs: float, rhs: float, tolerance: float,
             started: float, note: str = "") -> IdentityReport:
    lhs, rhs = float(lhs), float(rhs)
    abs_residual = abs(lhs - rhs)
    rel_residual = abs_residual / abs(rhs) if rhs != 0.0 else abs_residual
    runtime_ms = int(round((time.perf_counter() - started) * 1000.0))
    return IdentityReport(identity_id, q, lhs, rhs, abs_residual, rel_residual,
                          bool(rel_residual < tolerance), runtime_ms, tolerance, note)



def __check_power(m: int) -> int:
    if isinstance(m, bool) or int(m) != m or m < 2:
        raise ValueError(f"m must be an integer >= 2, got {m!r}")
    return int(m)



def __suite_tasks(q_values: list[float], config: SuiteConfig) -> list[tuple]:
    """(identity_id, q, check, args, kwargs) for every check the grid admits."""
    cap = {"cutoff_cap": config.gaussian_cutoff_cap}
    tasks = []
    for q in q_values:
        if q <= constants.GAUSSIAN_Q_MAX:
            tasks.append(("q_gaussian_integral", q, check_q_gaussian_integral, (q,), cap))
            tasks.append(("tricomi_gaussian", q, check_tricomi_gaussian, (q,), cap))
            tasks.extend((f"power_integral[m={m}]", q, check_power_integral, (m, q), cap)
                         for m in constants.POWER_INTEGRAL_ORDERS)
        else:
            logger.info("q = %g is above %g, skipping the q-Gaussian integrals", q, constants.GAUSSIAN_Q_MAX)
        if q <= constants.OSCILLATORY_Q_MAX:
            tasks.append(("q_fresnel", q, check_q_fresnel, (q,), cap))
            tasks.append(("borel_chain", q, check_borel_chain, (q,), {}))
        else:
            logger.info("q = %g is above %g, skipping the Fresnel and Borel chain checks", q, constants.OSCILLATORY_Q_MAX)
        tasks.append(("qtrig", q, check_qtrig_identities, (q,), {}))
        tasks.append(("jackson", q, check_jackson_battery, (q,), {}))
        tasks.append(("q_gaussian_derivatives", q, check_q_gaussian_derivatives, (q,), {}))
    tasks.extend((f"tsallis_gaussian_integral[Q={Q:g}]", None, check_tsallis_integral, (Q,), {})
                 for Q in constants.TSALLIS_Q_GRID)
    return tasks



def __run_task(task: tuple) -> list[IdentityReport]:
    identity_id, q, check, args, kwargs = task
    started = time.perf_counter()
    try:
        outcome = check(*args, **kwargs)
    except Exception as e:
        logger.error("%s at q = %s failed: %s", identity_id, q, e)
        runtime_ms = int(round((time.perf_counter() - started) * 1000.0))
        nan = math.nan
        return [IdentityReport(identity_id, q, nan, nan, nan, nan, False, runtime_ms, nan, f"{type(e).__name__}: {e}")]
    if isinstance(outcome, IdentityReport):
        return [outcome]
    return list(outcome)
