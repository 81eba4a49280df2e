"""
Command-line front end.

    umbraq eval q_gamma --q 0.5 --x 3
    umbraq plot --q 0.4,0.6,0.9 --range 0:6 --steps 600 --out fig1.csv
    umbraq plot --q 0.9 --parametric --format svg --out fig2.svg
    umbraq verify --q 0.4,0.6,0.9 --out report.json

Exit codes: 0 success, 1 a computation or identity failed, 2 invalid configuration or usage.
"""
import sys
import logging
import argparse
from dataclasses import dataclass, field
from umbraq import qtrig, verify
from umbraq.bin.config import QParam, ToleranceConfig, as_qparam, get_default_tolerance
from umbraq.bin.errors import ConfigError, QParamError, UmbraqError, UnknownFunction
from umbraq.qfunctions import EvalMethod
from umbraq.utilities import constants, registry, utils


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2



@dataclass(frozen=True)
class RunConfig:
    """
    A validated command line.

    Args:
        command (str): eval, plot or verify.
        q (tuple[float, ...]): The q values, each validated as a QParam.
        tolerance (ToleranceConfig): Defaults with --rel-tol / --abs-tol applied (eval and plot).
        output_path (str, optional): Where plot and verify write; stdout when omitted.
        format (str): csv, svg, json or plain.
        tolerance_override (float, optional): verify only; the --rel-tol pass threshold.
    """
    command: str
    q: tuple[float, ...]
    tolerance: ToleranceConfig = field(default_factory=ToleranceConfig)
    output_path: str | None = None
    format: str = "plain"
    tolerance_override: float | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """
        Raises:
            QParamError: If a q value is invalid.
            ConfigError: On malformed tolerances or UMBRAQ_MAX_FACTORS.
        """
        q_values = parse_q_list(args.q) if args.q is not None else constants.DEFAULT_Q_GRID
        if args.command == "eval" and len(q_values) != 1:
            raise ConfigError("eval takes a single --q value")
        fmt = args.format or {"eval": "plain", "plot": "csv", "verify": "json"}[args.command]
        tolerance = get_default_tolerance()
        override = None
        if args.command == "verify":
            override = args.rel_tol
        else:
            tolerance = tolerance.with_overrides(rel_tol=args.rel_tol, abs_tol=args.abs_tol)
        return cls(args.command, tuple(as_qparam(q).q for q in q_values), tolerance, args.out, fmt, override)



def parse_q_list(text: str) -> tuple[float, ...]:
    """'0.4,0.6,0.9' -> (0.4, 0.6, 0.9), each validated as a QParam."""
    values = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            values.append(float(part))
        except ValueError:
            raise QParamError(f"q must be a real number, got {part!r}") from None
    return tuple(QParam(v).q for v in values)



def parse_range(text: str) -> tuple[float, float]:
    """'a:b' -> (a, b) with a < b."""
    try:
        lower, upper = (float(part) for part in str(text).split(":"))
    except ValueError:
        raise ConfigError(f"--range must look like a:b, got {text!r}") from None
    if not upper > lower:
        raise ConfigError(f"--range needs a < b, got {text!r}")
    return lower, upper



def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", help="q value, or a comma separated list for plot and verify")
    common.add_argument("--rel-tol", type=float, dest="rel_tol",
                        help="relative tolerance (verify: the pass threshold of every identity)")
    common.add_argument("--abs-tol", type=float, dest="abs_tol", help="absolute tolerance")
    common.add_argument("--out", help="output file, stdout when omitted")
    common.add_argument("--verbose", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(prog="umbraq", description="Umbral q-calculus: values, figure data and identity checks.")
    commands = parser.add_subparsers(dest="command", required=True)

    evaluate = commands.add_parser("eval", parents=[common], help="evaluate one function",
                                   epilog="functions:\n" + registry.usage(),
                                   formatter_class=argparse.RawDescriptionHelpFormatter)
    evaluate.add_argument("function")
    evaluate.add_argument("--x", type=float)
    evaluate.add_argument("--y", type=float)
    evaluate.add_argument("--n", type=int)
    evaluate.add_argument("--mu", type=float)
    evaluate.add_argument("--method", choices=[m.value for m in EvalMethod])
    evaluate.add_argument("--format", choices=["plain", "json"])

    plot = commands.add_parser("plot", parents=[common], help="sine-q / cosine-q figure data")
    plot.add_argument("--range", default="0:6", dest="x_range", help="sample range a:b")
    plot.add_argument("--steps", type=int, default=600)
    plot.add_argument("--parametric", action="store_true", help="(cos_q, sin_q) pairs instead of curves against x")
    plot.add_argument("--format", choices=["csv", "svg"])

    check = commands.add_parser("verify", parents=[common], help="run the identity suite")
    check.add_argument("--workers", type=int, default=1)
    check.add_argument("--format", choices=["json"])
    return parser



def cmd_eval(function_name: str, args: dict, q: float, tol: ToleranceConfig | None = None,
             fmt: str = "plain") -> str:
    """
    Evaluates a registered function.

    Returns:
        str: The printed text: the value, followed by its error bound when one is available.

    Raises:
        UnknownFunction: If function_name is not registered.
        ConfigError: If a required argument is missing.
    """
    entry = registry.lookup(function_name)
    missing = [name for name in entry.required if args.get(name) is None]
    if missing:
        raise ConfigError(f"{function_name} needs {' '.join('--' + m for m in missing)}")
    q = as_qparam(q)
    outcome = entry.evaluate(args, q, tol or get_default_tolerance())

    if fmt == "json":
        value = outcome.value
        if isinstance(value, complex):
            value = [value.real, value.imag]
        return utils.dumps_json({"function": function_name, "q": q.q, "value": value,
                                 "error_bound": outcome.error_bound}).rstrip("\n")
    text = utils.format_significant(outcome.value) if not isinstance(outcome.value, complex) else str(outcome.value)
    if outcome.error_bound is not None:
        text += f"\nerror bound: {outcome.error_bound:.3e}"
    return text



def cmd_plot_trig(q_list, x_range: tuple[float, float], steps: int, fmt: str = "csv", out: str | None = None,
                  parametric: bool = False) -> str:
    """
    Writes sine-q / cosine-q samples for every q.

    CSV: column x, then sin_q(q=...), cos_q(q=...) per q; with parametric=True the columns are
    x, cos_q(q=...), sin_q(q=...). SVG renders the same samples.

    Returns:
        str: The output path, or the CSV text when out is None.
    """
    x_min, x_max = x_range
    if parametric:
        table = None
        for q in q_list:
            curve = qtrig.parametric_curve(q, x_min, x_max, steps)
            if table is None:
                table = curve[["x"]].copy()
            table[f"cos_q(q={q:g})"] = curve["cos_q"]
            table[f"sin_q(q={q:g})"] = curve["sin_q"]
    else:
        table = qtrig.trig_table(q_list, x_min, x_max, steps)

    if fmt == "svg":
        if out is None:
            raise ConfigError("svg output needs --out")
        if parametric:
            curves = [(f"q={q:g}", table[f"cos_q(q={q:g})"].to_numpy(), table[f"sin_q(q={q:g})"].to_numpy())
                      for q in q_list]
            return utils.write_svg(curves, out, "cos_q", "sin_q", equal_aspect=True)
        curves = [(column, table["x"].to_numpy(), table[column].to_numpy()) for column in table.columns[1:]]
        return utils.write_svg(curves, out, "x", "value")
    if out is None:
        return table.map(utils.format_significant).to_csv(index=False, lineterminator="\n")
    return utils.write_csv(table, out)



def cmd_verify(q_list, out: str | None = None, fmt: str = "json", tolerance_override: float | None = None,
               workers: int = 1) -> int:
    """
    Runs the identity suite and writes the JSON report {suite_version, q, results}.

    Returns:
        int: 0 when every report passed, 1 otherwise.
    """
    reports = verify.run_suite(q_list, verify.SuiteConfig(tolerance_override, workers))
    payload = {
        "suite_version": constants.SUITE_VERSION,
        "q": list(q_list),
        "results": [report.to_dict() for report in reports],
    }
    text = utils.dumps_json(payload)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        logger.info("wrote %d reports to %s", len(reports), out)
    failed = [r.identity_id for r in reports if not r.passed]
    if failed:
        print(f"ERROR! - {len(failed)} identity report(s) failed: {', '.join(sorted(set(failed)))}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK



def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        config = RunConfig.from_args(args)
        if config.command == "eval":
            values = {"x": args.x, "y": args.y, "n": args.n, "mu": args.mu, "method": args.method}
            print(cmd_eval(args.function, values, config.q[0], config.tolerance, config.format))
            return EXIT_OK
        if config.command == "plot":
            result = cmd_plot_trig(config.q, parse_range(args.x_range), args.steps, config.format,
                                   config.output_path, args.parametric)
            if config.output_path is None:
                sys.stdout.write(result)
            return EXIT_OK
        return cmd_verify(config.q, config.output_path, config.format, config.tolerance_override, args.workers)
    except UnknownFunction as e:
        print(f"ERROR! - {e}\nfunctions:\n{registry.usage()}", file=sys.stderr)
        return EXIT_CONFIG
    except (QParamError, ConfigError) as e:
        print(f"ERROR! - {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (UmbraqError, ValueError, ArithmeticError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"ERROR! - {e}", file=sys.stderr)
        return EXIT_FAILURE



if __name__ == "__main__":
    sys.exit(main())
