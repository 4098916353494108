"""Command-line front end.

Every subcommand writes CSV to ``--out`` (or stdout). Errors raised by the
library are reported as a single ``ERROR <Code>: <message>`` line on stderr
with exit status 1; bad flags exit with status 2 and usage text.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from pathlib import Path

import numpy as np

from . import csvio
from .distributions import DEFAULT_MARGIN, Variable, classical_density, density, display_grid, moment
from .errors import PhaseOpsError
from .families import FamilySpec, Kind, make_family, recurrence_table
from .operators import DEFAULT_DIM, arccos_op, arcsin_op, build_cosine, build_sine
from .states import (
    DensityState,
    closed_form_report,
    coherent,
    coherent_fg,
    fock,
    from_matrix,
)
from .verification import SUITES, run_suite

__all__ = ["main", "build_parser", "FIGURES"]

DEFAULT_GRID = 401
FIGURE_DIM = 40

# λ sweeps for the Fock-variance figures; λ = 0 is the Chebyshev-T limit
LAMBDA_SWEEP = np.round(np.arange(-0.45, 3.0001, 0.05), 10)
VACUUM_LAMBDAS = (-0.25, 0.0, 0.25, 0.5, 1.0, 2.0)
COHERENT_ALPHAS = (1, 1j, 1 + 1j, 0)
COHERENT_LAMBDAS = (-0.25, 1.0)
JACOBI_PAIRS = ((-0.5, -0.25), (-0.5, 0.5), (0.5, -0.5), (0.25, 0.5))


# ---------------------------------------------------------------- parsing

def _state_arg(text: str):
    """Parse ``fock:<n>``, ``coherent:<re>,<im>`` or ``file:<path>`` into a tagged tuple."""
    kind, sep, rest = text.partition(":")
    if not sep or not rest:
        raise argparse.ArgumentTypeError(f"state must be fock:<n>, coherent:<re>,<im> or file:<path>, got {text!r}")
    if kind == "fock":
        if not re.fullmatch(r"\d+", rest):
            raise argparse.ArgumentTypeError(f"fock index must be a non-negative integer, got {rest!r}")
        return ("fock", int(rest))
    if kind == "coherent":
        parts = rest.split(",")
        try:
            re_part, im_part = (float(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"coherent amplitude must be <re>,<im>, got {rest!r}") from None
        if not (np.isfinite(re_part) and np.isfinite(im_part)):
            raise argparse.ArgumentTypeError("coherent amplitude must be finite")
        return ("coherent", complex(re_part, im_part))
    if kind == "file":
        return ("file", rest)
    raise argparse.ArgumentTypeError(f"unknown state kind {kind!r}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (np.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _add_family_flags(parser):
    parser.add_argument("--family", required=True, choices=[k.value for k in Kind])
    parser.add_argument("--mu", type=float, help="Jacobi exponent of (1 - x)")
    parser.add_argument("--nu", type=float, help="Jacobi exponent of (1 + x)")
    parser.add_argument("--lambda", dest="lam", type=float, help="Gegenbauer parameter")


def _add_common(parser):
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=["csv"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phaseops",
        description="Cosine and sine phase operators from orthogonal polynomials.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("family", help="recurrence coefficients of a polynomial family")
    p.add_argument("action", choices=["coeffs"])
    _add_family_flags(p)
    p.add_argument("--n-max", type=_nonnegative_int, default=10)
    _add_common(p)

    p = sub.add_parser("op", help="dump a truncated operator matrix")
    p.add_argument("operator", choices=["cosine", "sine", "arccos", "arcsin"])
    _add_family_flags(p)
    p.add_argument("--dim", type=_positive_int, default=DEFAULT_DIM)
    _add_common(p)

    p = sub.add_parser("expect", help="expectation values, variances and uncertainty products")
    _add_family_flags(p)
    p.add_argument("--state", type=_state_arg, required=True)
    p.add_argument("--dim", type=_positive_int, default=DEFAULT_DIM)
    _add_common(p)

    p = sub.add_parser("dist", help="probability density on a uniform grid")
    p.add_argument("--var", required=True, choices=[v.value for v in Variable])
    _add_family_flags(p)
    p.add_argument("--state", type=_state_arg, required=True)
    p.add_argument("--dim", type=_positive_int, default=DEFAULT_DIM)
    p.add_argument("--grid", type=_positive_int, default=DEFAULT_GRID)
    p.add_argument("--margin", type=_positive_float, default=DEFAULT_MARGIN)
    _add_common(p)

    p = sub.add_parser("figure", help="CSV data for one of the reference figures")
    p.add_argument("name", choices=sorted(FIGURES, key=lambda k: int(k[1:])))
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--grid", type=_positive_int, default=DEFAULT_GRID)
    p.add_argument("--margin", type=_positive_float, default=DEFAULT_MARGIN)
    p.add_argument("--format", choices=["csv"], default="csv")

    p = sub.add_parser("verify", help="run the numerical verification suites")
    p.add_argument("--suite", default="all", choices=["all"] + list(SUITES))
    p.add_argument("--tol", type=_positive_float, default=1e-10,
                   help="quadrature tolerance for the oracle integrals")
    return parser


def _check_family_flags(parser, args):
    kind = Kind(args.family)
    given = {"--mu": args.mu, "--nu": args.nu, "--lambda": args.lam}
    allowed = {Kind.JACOBI: {"--mu", "--nu"}, Kind.GEGENBAUER: {"--lambda"}}.get(kind, set())
    extra = [flag for flag, value in given.items() if value is not None and flag not in allowed]
    missing = [flag for flag in allowed if given[flag] is None]
    if extra:
        parser.error(f"{', '.join(extra)} not accepted for --family {kind.value}")
    if missing:
        parser.error(f"--family {kind.value} requires {', '.join(sorted(missing))}")


def _family(args) -> FamilySpec:
    return make_family(args.family, mu=args.mu, nu=args.nu, lam=args.lam)


def _state(tag, dim) -> DensityState:
    kind, value = tag
    if kind == "fock":
        return fock(value, dim)
    if kind == "coherent":
        return coherent(value, dim)
    return from_matrix(csvio.read_matrix(value), origin=f"file:{value}")


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# ---------------------------------------------------------------- commands

def _cmd_family(args):
    spec = _family(args)
    _emit(csvio.format_coefficients(recurrence_table(spec, args.n_max), args.n_max), args.out)


def _cmd_op(args):
    spec = _family(args)
    table = recurrence_table(spec, args.dim)
    if args.operator == "cosine":
        op = build_cosine(table, args.dim)
    elif args.operator == "sine":
        op = build_sine(table, args.dim)
    elif args.operator == "arccos":
        op = arccos_op(build_cosine(table, args.dim))
    else:
        op = arcsin_op(build_sine(table, args.dim))
    _emit(csvio.format_matrix(op.entries), args.out)


def _cmd_expect(args):
    spec = _family(args)
    state = _state(args.state, args.dim)
    report = closed_form_report(recurrence_table(spec, state.dim), state)
    _emit(csvio.format_report(report), args.out)


def _cmd_dist(args):
    spec = _family(args)
    state = _state(args.state, args.dim)
    table = recurrence_table(spec, state.dim)
    points = display_grid(args.var, args.grid, args.margin)
    _emit(csvio.format_distribution(density(table, spec, state, points, args.var, args.margin)), args.out)


def _cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    start = time.perf_counter()
    for name in names:
        result = run_suite(name, args.tol)
        ok &= result.passed
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name:<26} max_error={result.max_error:.3e} "
              f"threshold={result.threshold:.0e}  {result.detail}")
    print(f"{'all passed' if ok else 'FAILURES'}: {len(names)} suites", file=sys.stdout)
    print(f"elapsed {time.perf_counter() - start:.1f} s", file=sys.stderr)
    return 0 if ok else 1


# ---------------------------------------------------------------- figures

def _gegenbauer_or_limit(lam: float) -> FamilySpec:
    # λ -> 0 is represented by the Chebyshev-T family
    if lam == 0.0:
        return make_family("chebyshev-t")
    return make_family("gegenbauer", lam=lam)


def _lam_tag(lam):
    return "0" if lam == 0.0 else f"{lam:g}"


def _alpha_tag(alpha):
    alpha = complex(alpha)
    return f"{alpha.real:g}{alpha.imag:+g}i"


def _dist_curve(spec, state, variable, grid, margin, with_classical):
    table = recurrence_table(spec, state.dim)
    points = display_grid(variable, grid, margin)
    dist = density(table, spec, state, points, variable, margin)
    classical = classical_density(variable, points).density if with_classical else None
    return csvio.format_distribution(dist, classical)


def _fock_variance_curves(variances_for, names, classical):
    """One CSV per Fock level, each a λ sweep; ``variances_for(spec, n)`` returns a tuple."""
    files = {}
    specs = [_gegenbauer_or_limit(lam) for lam in LAMBDA_SWEEP]
    for n in range(4):
        columns = {"lambda": LAMBDA_SWEEP}
        rows = np.array([variances_for(spec, n) for spec in specs])
        for k, name in enumerate(names):
            columns[name] = rows[:, k]
        columns["classical"] = np.full(LAMBDA_SWEEP.size, classical)
        meta = {"family": "gegenbauer (lambda=0: chebyshev-t)", "state": f"fock:{n}"}
        files[f"n{n}"] = csvio.format_table(columns, meta)
    return files


def _figure_f1(grid, margin):
    def variances(spec, n):
        report = closed_form_report(recurrence_table(spec, n + 3), fock(n, n + 3))
        return report.var_C, report.var_S

    return _fock_variance_curves(variances, ("var_C", "var_S"), 0.5)


def _figure_f7(grid, margin):
    def variances(spec, n):
        table = recurrence_table(spec, n + 3)
        state = fock(n, n + 3)
        out = []
        for variable in (Variable.ARCCOS, Variable.ARCSIN):
            mean = moment(table, spec, state, 1, variable)
            out.append(moment(table, spec, state, 2, variable) - mean**2)
        return tuple(out)

    return _fock_variance_curves(variances, ("var_theta_c", "var_theta_s"), np.pi**2 / 12)


def _figure_f2(grid, margin):
    alpha_abs = np.round(np.arange(0, 201) * 0.05, 10)
    files = {}
    for lam in (-0.25, 0.5, 1.0, 5.0):
        table = recurrence_table(make_family("gegenbauer", lam=lam), 512)
        f1 = np.array([coherent_fg(table, a).F1 for a in alpha_abs])
        meta = {"family": f"gegenbauer(lambda={lam:g})", "state": "coherent"}
        files[f"lambda{_lam_tag(lam)}"] = csvio.format_table({"alpha_abs": alpha_abs, "F1": f1}, meta)
    return files


def _figure_f3(grid, margin):
    files = {}
    for lam in (-0.25, 1.0):
        spec = make_family("gegenbauer", lam=lam)
        for n in (0, 1, 5):
            files[f"lambda{_lam_tag(lam)}_fock{n}"] = _dist_curve(
                spec, fock(n, n + 3), Variable.COSINE, grid, margin, True)
    return files


def _vacuum_sweep(variable):
    def build(grid, margin):
        return {f"lambda{_lam_tag(lam)}": _dist_curve(_gegenbauer_or_limit(lam), fock(0, 3), variable,
                                                      grid, margin, True)
                for lam in VACUUM_LAMBDAS}
    return build


def _coherent_figure(variable):
    def build(grid, margin):
        files = {}
        for lam in COHERENT_LAMBDAS:
            spec = make_family("gegenbauer", lam=lam)
            for alpha in COHERENT_ALPHAS:
                files[f"lambda{_lam_tag(lam)}_alpha{_alpha_tag(alpha)}"] = _dist_curve(
                    spec, coherent(alpha, FIGURE_DIM), variable, grid, margin, False)
        return files
    return build


def _figure_f14(grid, margin):
    return {f"mu{mu:g}_nu{nu:g}": _dist_curve(make_family("jacobi", mu=mu, nu=nu), fock(0, 3),
                                              Variable.COSINE, grid, margin, False)
            for mu, nu in JACOBI_PAIRS}


FIGURES = {
    "f1": _figure_f1,
    "f2": _figure_f2,
    "f3": _figure_f3,
    "f5": _vacuum_sweep(Variable.COSINE),
    "f6": _coherent_figure(Variable.COSINE),
    "f7": _figure_f7,
    "f11": _vacuum_sweep(Variable.ARCCOS),
    "f12": _coherent_figure(Variable.ARCCOS),
    "f14": _figure_f14,
    "f16": _coherent_figure(Variable.SINE),
    "f17": _coherent_figure(Variable.ARCSIN),
}


def write_figure(name: str, out_dir: str | Path, grid: int = DEFAULT_GRID,
                 margin: float = DEFAULT_MARGIN) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for curve, text in FIGURES[name](grid, margin).items():
        path = out_dir / f"{name}_{curve}.csv"
        path.write_text(text)
        written.append(path)
    return written


def _cmd_figure(args):
    for path in write_figure(args.name, args.out, args.grid, args.margin):
        print(path)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "family", None) is not None:
        _check_family_flags(parser, args)
    commands = {
        "family": _cmd_family,
        "op": _cmd_op,
        "expect": _cmd_expect,
        "dist": _cmd_dist,
        "figure": _cmd_figure,
        "verify": _cmd_verify,
    }
    try:
        return commands[args.subcommand](args) or 0
    except PhaseOpsError as exc:
        print(f"ERROR {exc.code}: {' '.join(str(exc).split())}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # argument values that pass parsing but are outside a function's domain
        print(f"ERROR ValueError: {' '.join(str(exc).split())}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
