"""The functions reachable from `umbraq eval`, keyed by name."""
from typing import Callable
from dataclasses import dataclass
from umbraq import jackson, qcore, qfunctions, qtrig, tsallis, umbral
from umbraq.bin.config import QParam, ToleranceConfig
from umbraq.bin.errors import UnknownFunction
from umbraq.qfunctions import EvalMethod



@dataclass(frozen=True)
class EvalOutcome:
    """A value (number or polynomial text) and, when the evaluation provides one, its error bound."""
    value: float | complex | str
    error_bound: float | None = None



@dataclass(frozen=True)
class EvalEntry:
    """
    One registry row.

    Args:
        name (str): The command-line name.
        required (tuple[str, ...]): Arguments among x, y, n, mu that must be supplied.
        evaluate (Callable): (args, q, tol) -> EvalOutcome, args the dict of parsed arguments.
        summary (str): One line for the usage text.
    """
    name: str
    required: tuple[str, ...]
    evaluate: Callable[[dict, QParam, ToleranceConfig], EvalOutcome]
    summary: str



def lookup(name: str) -> EvalEntry:
    """
    Raises:
        UnknownFunction: If name is not registered.
    """
    try:
        return EVAL_REGISTRY[name]
    except KeyError:
        raise UnknownFunction(f"unknown function {name!r}; choose from {', '.join(sorted(EVAL_REGISTRY))}") from None



def usage() -> str:
    width = max(len(name) for name in EVAL_REGISTRY)
    lines = []
    for name in sorted(EVAL_REGISTRY):
        entry = EVAL_REGISTRY[name]
        needs = " ".join(f"--{arg}" for arg in entry.required)
        lines.append(f"  {name:<{width}}  {entry.summary}" + (f"  [{needs}]" if needs else ""))
    return "\n".join(lines)



# ---- Private Functions ----

def __q_gamma(args: dict, q: QParam, tol: ToleranceConfig) -> EvalOutcome:
    result = qcore.q_gamma(args["x"], q, tol)
    return EvalOutcome(result.value, result.truncation_error_bound)


def __pi_q(args: dict, q: QParam, tol: ToleranceConfig) -> EvalOutcome:
    result = qcore.pi_q_result(q, tol)
    return EvalOutcome(result.value, result.truncation_error_bound)


def __q_exp(args: dict, q: QParam, tol: ToleranceConfig) -> EvalOutcome:
    method = EvalMethod(args.get("method") or EvalMethod.AUTO)
    image = umbral.c_image(q, 1, tol)
    if method is EvalMethod.BOREL_INTEGRAL or (method is EvalMethod.AUTO and not umbral.in_series_gate(image, args["x"])):
        result = umbral.umbral_rational_result(image, args["x"], 0, tol)
        return EvalOutcome(result.value, result.abs_error_estimate)
    return EvalOutcome(qfunctions.q_exp(args["x"], q, method, tol))


def __q_cos(args: dict, q: QParam, tol: ToleranceConfig) -> EvalOutcome:
    return EvalOutcome(qfunctions.q_cos(args["x"], q, tol, args.get("method") or EvalMethod.AUTO))


def __q_sin(args: dict, q: QParam, tol: ToleranceConfig) -> EvalOutcome:
    return EvalOutcome(qfunctions.q_sin(args["x"], q, tol, args.get("method") or EvalMethod.AUTO))


def __q_hermite(args: dict, q: QParam, tol: ToleranceConfig) -> EvalOutcome:
    return EvalOutcome(str(jackson.q_hermite(args["n"], q)))


EVAL_REGISTRY: dict[str, EvalEntry] = {entry.name: entry for entry in [
    EvalEntry("q_number", ("x",), lambda a, q, t: EvalOutcome(qcore.q_number(a["x"], q)), "[x]_q"),
    EvalEntry("q_factorial", ("n",), lambda a, q, t: EvalOutcome(qcore.q_factorial(a["n"], q)), "[n]_q!"),
    EvalEntry("q_gamma", ("x",), __q_gamma, "q-Gamma at x, with its truncation bound"),
    EvalEntry("q_gamma_bracket", ("x",), lambda a, q, t: EvalOutcome(qcore.q_gamma_bracket(a["x"], q, t)),
              "q-Gamma from the truncated bracket product"),
    EvalEntry("pi_q", (), __pi_q, "qGamma(1/2)**2, with its truncation bound"),
    EvalEntry("pi_q_wallis", (), lambda a, q, t: EvalOutcome(qcore.pi_q_wallis(q, t)), "pi_q from the q-Wallis product"),
    EvalEntry("gamma", ("x",), lambda a, q, t: EvalOutcome(qcore.classical_gamma(a["x"])), "classical Gamma (q ignored)"),
    EvalEntry("q_exp", ("x",), __q_exp, "q-exponential; --method series|borel_integral|product|auto"),
    EvalEntry("tricomi_q1", ("x",), lambda a, q, t: EvalOutcome(qfunctions.tricomi_q1(a["x"], q, t)),
              "(q,1)-Tricomi function"),
    EvalEntry("tricomi_qq", ("x",), lambda a, q, t: EvalOutcome(qfunctions.tricomi_qq(a["x"], q, t)),
              "(q,q)-Tricomi function"),
    EvalEntry("q_bessel", ("mu", "x"), lambda a, q, t: EvalOutcome(qfunctions.q_bessel(a["mu"], a["x"], q, t)),
              "q-Bessel J_mu at z = x"),
    EvalEntry("q_cos", ("x",), __q_cos, "cos-q series/integral function"),
    EvalEntry("q_sin", ("x",), __q_sin, "sin-q series/integral function"),
    EvalEntry("sin_q", ("x",), lambda a, q, t: EvalOutcome(qtrig.sin_q_scaled(a["x"], q)), "product sine-q at pi_q x"),
    EvalEntry("cos_q", ("x",), lambda a, q, t: EvalOutcome(qtrig.cos_q_scaled(a["x"], q)), "product cosine-q at pi_q x"),
    EvalEntry("q_gaussian_derivative", ("n", "x"),
              lambda a, q, t: EvalOutcome(qfunctions.q_gaussian_derivative(a["n"], a["x"], q, t)),
              "(-1)^n d^n/dx^n of the q-Gaussian C(x^2)"),
    EvalEntry("q_hermite", ("n",), __q_hermite, "(q,1) Hermite polynomial H_n(x, y)"),
    EvalEntry("hermite2", ("n", "x", "y"), lambda a, q, t: EvalOutcome(qfunctions.hermite2(a["n"], a["x"], a["y"])),
              "classical two-variable Hermite polynomial (q ignored)"),
    EvalEntry("tsallis_exp", ("x",), lambda a, q, t: EvalOutcome(tsallis.tsallis_exp(a["x"], q.q)),
              "Tsallis exponential with q_t = q"),
    EvalEntry("tsallis_moment", ("mu",), lambda a, q, t: EvalOutcome(tsallis.tsallis_moment(a["mu"], q.q)),
              "d-image moment with Q = q"),
    EvalEntry("tsallis_hermite", ("n", "y"), lambda a, q, t: EvalOutcome(tsallis.tsallis_hermite(a["n"], a["y"], q.q)),
              "Tsallis-Hermite value with Q = q"),
]}
