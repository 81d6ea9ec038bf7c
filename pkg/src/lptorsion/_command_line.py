import sys
import argparse
import pathlib
from typing import Any, Dict, List, Optional

import pandas as pd
import yaml

from .config_parser import (
    inline_domain,
    load_default_corpus,
    numeric_settings,
    parse_domains,
    parse_run_config,
)
from .constructions import (
    equal_balls_value,
    one_d_sharp,
    one_d_sharp_inf,
    sequence_table,
)
from .domains import DomainSpec, IntervalUnion
from .functionals import BACKENDS, FORMATS, evaluate, format_p, render_reports
from .pde import write_field
from .specialfn import first_bessel_zero
from .utils import P_INF, LpTorsionError, write_atomic
from .utils.constants import OUTPUT_DIGITS
from .verify import render_results, run_corpus

SWEEP_COLUMNS = ["p", "q", "value", "domain"]
ONE_D_COLUMNS = ["p", "q", "sharp", "attained"]
BESSEL_COLUMNS = ["nu", "j_nu", "precision"]

# Command-line option to run configuration key.
_CONFIG_KEYS = {
    "domain": "domain",
    "dim": "dim",
    "radius": "radius",
    "semi_axes": "semi_axes",
    "sides": "sides",
    "corpus": "corpus",
    "p": "ps",
    "q": "qs",
    "backend": "backend",
    "h": "h",
    "tol": "tol",
    "richardson": "richardson",
    "jacobi": "jacobi",
    "out": "output",
    "format": "format",
    "workers": "workers",
    "family": "family",
    "n": "ns",
    "m": "m",
    "sequence": "sequence",
    "dump_field": "dump_field",
    "verbose": "verbose",
}


def _comma_separated(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _comma_separated_integers(text: str) -> List[int]:
    if "=" in text:
        text = text.split("=", 1)[1]
    try:
        return [int(item) for item in _comma_separated(text)]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"expected integers, got '{text}'") from error


def _comma_separated_floats(text: str) -> List[float]:
    try:
        return [float(item) for item in _comma_separated(text)]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"expected numbers, got '{text}'") from error


def _load_config(args: argparse.Namespace):
    cli_values: Dict[str, Any] = {
        key: getattr(args, option)
        for option, key in _CONFIG_KEYS.items()
        if getattr(args, option, None) is not None
    }
    return parse_run_config(cli_values, args.config)


def _load_domains(config, default_corpus: bool = True) -> Dict[str, DomainSpec]:
    """Inline domain if one is given, else the corpus file or the built-in corpus."""
    if config.domain is not None:
        return {config.domain: inline_domain(config)}
    if config.corpus is not None:
        return parse_domains(pathlib.Path(config.corpus))
    if default_corpus:
        return load_default_corpus()
    raise ValueError("No domain given; use --domain or --corpus.")


def _emit(content: str, config) -> None:
    if config.output is None:
        print(content, end="")
    else:
        write_atomic(content, config.output)
        print(f"Output written to {config.output}.")


def _frame_to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, float_format=f"%.{OUTPUT_DIGITS}g")


def lptorsion_eval(args: argparse.Namespace) -> int:
    """
    Entrypoint evaluating T_p, lambda_1, F_p and F_{p,q} of one or more domains.

    Args:
        args: input namespace from argparse

    Returns:
        Exit status

    """
    config = _load_config(args)
    if not config.ps:
        raise ValueError("At least one exponent p is needed for eval.")
    domains = _load_domains(config, default_corpus=False)
    settings = numeric_settings(config)

    reports = []
    for index, (label, spec) in enumerate(domains.items()):
        dump = config.dump_field is not None and index == 0
        report = evaluate(
            spec,
            config.ps,
            config.qs,
            backend="numeric" if dump else config.backend,
            settings=settings,
            label=label,
            keep_fields=dump,
            verbose=config.verbose,
        )
        if dump:
            write_field(report.fields[-1], config.dump_field)
            print(f"Torsion field of {label} written to {config.dump_field}.")
        reports.append(report)

    print(render_reports(reports, "txt"), end="")
    if config.output is not None:
        write_atomic(render_reports(reports, config.format), config.output)
        print(f"Report written to {config.output}.")
    return 0


def lptorsion_verify(args: argparse.Namespace) -> int:
    """
    Entrypoint running every applicable inequality check over a domain corpus.

    Args:
        args: input namespace from argparse

    Returns:
        0 if all checks pass, 1 on any violation and 2 if a domain could not be checked.

    """
    config = _load_config(args)
    if not config.ps:
        raise ValueError("At least one exponent p is needed for verify.")
    outcomes, summary = run_corpus(
        _load_domains(config),
        config.ps,
        config.qs,
        backend=config.backend,
        settings=numeric_settings(config),
        workers=config.workers,
        verbose=config.verbose,
    )

    print(render_results(outcomes, summary, "txt"), end="")
    if config.output is not None:
        write_atomic(render_results(outcomes, summary, config.format), config.output)
        print(f"Check results written to {config.output}.")
    return summary.exit_status


def lptorsion_sweep_pq(args: argparse.Namespace) -> int:
    """
    Entrypoint tabulating F_{p,q} over a (p, q) grid, optionally with the values along
    the equal-balls sequence.

    Args:
        args: input namespace from argparse

    Returns:
        Exit status

    """
    config = _load_config(args)
    sequence = list(config.sequence or [])
    columns = SWEEP_COLUMNS + [f"equal_balls_n{n}" for n in sequence]

    rows = []
    if config.ps and config.qs:
        for label, spec in _load_domains(config).items():
            report = evaluate(
                spec,
                config.ps,
                config.qs,
                backend=config.backend,
                settings=numeric_settings(config),
                label=label,
                verbose=config.verbose,
            )
            for (p, q), (lower, upper) in report.fpq.items():
                row: Dict[str, Any] = {
                    "p": format_p(p),
                    "q": q,
                    "value": 0.5 * (lower + upper),
                    "domain": label,
                }
                for n in sequence:
                    row[f"equal_balls_n{n}"] = equal_balls_value(config.m, p, q, n)
                rows.append(row)

    _emit(_frame_to_csv(pd.DataFrame(rows, columns=columns)), config)
    return 0


def lptorsion_sequence(args: argparse.Namespace) -> int:
    """
    Entrypoint sampling an extremal domain sequence.

    Args:
        args: input namespace from argparse

    Returns:
        Exit status

    """
    config = _load_config(args)
    if config.family is None:
        raise ValueError("The sequence family is not given; use --family.")
    if not config.ps:
        raise ValueError("An exponent p is needed for sequence.")
    table = sequence_table(
        config.family,
        config.m,
        config.ps[0],
        config.ns or [10, 100, 1000],
        q=config.qs[0] if config.qs else None,
    )
    _emit(_frame_to_csv(table), config)
    return 0


def lptorsion_one_d_table(args: argparse.Namespace) -> int:
    """
    Entrypoint tabulating the sharp one-dimensional suprema of F_{p,q} next to the
    values attained by the unit interval.

    Args:
        args: input namespace from argparse

    Returns:
        Exit status

    """
    config = _load_config(args)
    for q in config.qs:
        if q > 1:
            raise ValueError(
                f"F_(p,q) is unbounded in one dimension for q > 1 (got q = {q}): the "
                "supremum is finite if and only if q <= 1."
            )

    rows = []
    if config.ps and config.qs:
        report = evaluate(
            IntervalUnion(((0.0, 1.0),)), config.ps, config.qs, backend="oracle"
        )
        for (p, q), (_, attained) in report.fpq.items():
            rows.append(
                {
                    "p": format_p(p),
                    "q": q,
                    "sharp": one_d_sharp_inf(q) if p == P_INF else one_d_sharp(p, q),
                    "attained": attained,
                }
            )

    _emit(_frame_to_csv(pd.DataFrame(rows, columns=ONE_D_COLUMNS)), config)
    return 0


def lptorsion_bessel_zero(args: argparse.Namespace) -> int:
    """
    Entrypoint printing first positive zeros of Bessel functions.

    Args:
        args: input namespace from argparse

    Returns:
        Exit status

    """
    config = _load_config(args)
    rows = []
    for nu in args.nu:
        zero = first_bessel_zero(nu)
        rows.append({"nu": zero.nu, "j_nu": zero.value, "precision": zero.precision})
    _emit(_frame_to_csv(pd.DataFrame(rows, columns=BESSEL_COLUMNS)), config)
    return 0


def _common_arguments() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--config",
        type=pathlib.Path,
        default=None,
        help="Optional YAML file with run configuration values. "
        "Command-line options override its values.",
    )
    parent.add_argument("--out", default=None, help="Output file (default: stdout).")
    parent.add_argument(
        "--format", choices=FORMATS, default=None, help="Output format (default: csv)."
    )
    parent.add_argument(
        "--verbose",
        action="store_true",
        default=None,
        help="Print progress information.",
    )
    return parent


def _domain_arguments() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    source = parent.add_mutually_exclusive_group()
    source.add_argument(
        "--domain",
        default=None,
        help="Single inline domain: interval, ball, ellipsoid or cuboid.",
    )
    source.add_argument(
        "--corpus", default=None, help="YAML domain document with one or more domains."
    )
    parent.add_argument("--dim", type=int, default=None, help="Dimension of --domain.")
    parent.add_argument("--radius", type=float, default=None, help="Radius of a ball.")
    parent.add_argument(
        "--semi-axes",
        type=_comma_separated_floats,
        default=None,
        help="Comma separated semi-axes of an ellipsoid.",
    )
    parent.add_argument(
        "--sides",
        type=_comma_separated_floats,
        default=None,
        help="Comma separated side lengths of a cuboid (default: unit cube).",
    )
    parent.add_argument(
        "--p",
        type=_comma_separated,
        default=None,
        help="Comma separated exponents p, 'inf' allowed (default: 1,1.5,2,4,inf).",
    )
    parent.add_argument(
        "--q",
        type=_comma_separated,
        default=None,
        help="Comma separated eigenvalue exponents q (default: 1).",
    )
    parent.add_argument(
        "--backend", choices=BACKENDS, default=None, help="Backend (default: auto)."
    )
    parent.add_argument(
        "--h", type=float, default=None, help="Grid spacing of the numeric backend."
    )
    parent.add_argument("--tol", type=float, default=None, help="Solver tolerance.")
    parent.add_argument(
        "--richardson",
        dest="richardson",
        action="store_const",
        const=True,
        default=None,
        help="Extrapolate numeric results from h and h/2 (default).",
    )
    parent.add_argument(
        "--no-richardson",
        dest="richardson",
        action="store_const",
        const=False,
        help="Report numeric results at spacing h only.",
    )
    parent.add_argument(
        "--jacobi",
        action="store_true",
        default=None,
        help="Jacobi preconditioning of the conjugate gradient solver.",
    )
    parent.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Number of worker processes for corpus runs (default: 1).",
    )
    return parent


def create_parser() -> argparse.ArgumentParser:
    """Argument parser of the 'lptorsion' command-line tool."""
    parser = argparse.ArgumentParser(
        description="Evaluate and verify inequalities between L^p norms of the torsion "
        "function and the first Dirichlet eigenvalue."
    )

    subparsers = parser.add_subparsers(
        help="The options available. "
        'Type e.g. "lptorsion eval --help" '
        "to get help on that particular "
        "option."
    )
    common = _common_arguments()
    domain = _domain_arguments()

    parser_eval = subparsers.add_parser(
        "eval", parents=[common, domain], help="Evaluate F_p and F_(p,q) of domains."
    )
    parser_eval.add_argument(
        "--dump-field",
        default=None,
        help="Write the fine-grid torsion field of the first domain to this file "
        "(forces the numeric backend).",
    )
    parser_eval.set_defaults(func=lptorsion_eval)

    parser_verify = subparsers.add_parser(
        "verify",
        parents=[common, domain],
        help="Check the inequalities on a domain corpus (default: built-in corpus).",
    )
    parser_verify.set_defaults(func=lptorsion_verify)

    parser_sweep = subparsers.add_parser(
        "sweep-pq",
        parents=[common, domain],
        help="Tabulate F_(p,q) over a (p, q) grid.",
    )
    parser_sweep.add_argument(
        "--sequence",
        type=_comma_separated_integers,
        default=None,
        help="Add equal-balls sequence columns for these n, e.g. n=1,10,100.",
    )
    parser_sweep.add_argument(
        "--m",
        type=int,
        default=None,
        help="Dimension of the sequence balls (default: 2).",
    )
    parser_sweep.set_defaults(func=lptorsion_sweep_pq)

    parser_sequence = subparsers.add_parser(
        "sequence", parents=[common, domain], help="Sample an extremal domain sequence."
    )
    parser_sequence.add_argument(
        "--family",
        choices=["ball_cluster", "equal_balls"],
        default=None,
        help="Sequence family.",
    )
    parser_sequence.add_argument(
        "--n",
        type=_comma_separated_integers,
        default=None,
        help="Comma separated sequence indices (default: 10,100,1000).",
    )
    parser_sequence.add_argument(
        "--m", type=int, default=None, help="Dimension (default: 2)."
    )
    parser_sequence.set_defaults(func=lptorsion_sequence)

    parser_one_d = subparsers.add_parser(
        "one-d-table",
        aliases=["oneD-table"],
        parents=[common, domain],
        help="Sharp one-dimensional suprema of F_(p,q) for q <= 1.",
    )
    parser_one_d.set_defaults(func=lptorsion_one_d_table)

    parser_bessel = subparsers.add_parser(
        "bessel-zero", parents=[common], help="First positive zeros of J_nu."
    )
    parser_bessel.add_argument(
        "nu",
        type=_comma_separated_floats,
        help="Order nu >= 0, or comma separated orders.",
    )
    parser_bessel.set_defaults(func=lptorsion_bessel_zero)

    return parser


def main(argv: Optional[List[str]] = None):
    """
    Main functionality run when the 'lptorsion' command-line tool is called.

    The following will be performed:
        - the input parameters will be read;
        - the run configuration assembled and validated;
        - the requested command run, writing its output atomically.

    Exit status is 0 on success, 1 if an inequality check is violated and 2 on usage or
    runtime errors.

    Returns:
        Nothing

    """
    parser = create_parser()
    args = parser.parse_args(argv)

    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        sys.exit(2)

    try:
        status = args.func(args)
    except (ValueError, LpTorsionError, OSError, yaml.YAMLError) as error:
        print(f"lptorsion: error: {error}", file=sys.stderr)
        sys.exit(2)

    sys.exit(status)


if __name__ == "__main__":
    main()
