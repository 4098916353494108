"""Numerical verification suites.

Each suite checks one group of properties against an oracle that does not
share code with the quantity under test: tanh-sinh quadrature for integrals,
Newton iteration on the Bonnet recurrence for Gauss-Legendre nodes, matrices
assembled entry by entry from closed-form band formulas, and so on. Every
suite returns a :class:`CheckResult` and never raises on a failed comparison.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .distributions import (
    Variable,
    classical_density,
    density_values,
    display_grid,
    moment,
)
from .families import (
    FamilySpec,
    RecurrenceTable,
    eval_p_all,
    make_family,
    recurrence_table,
)
from .operators import (
    anticommutator,
    arccos_op,
    arccos_series,
    arcsin_op,
    build_cosine,
    build_sine,
    commutator,
    eigendecompose,
    matrix_function,
    number_op,
    quadrature_rotation,
    shift_ops,
    unitary_exp,
)
from .quadrature import integrate
from .states import closed_form_report, coherent, coherent_fg, coherent_report, fock

__all__ = ["CheckResult", "SUITES", "run_suite", "run_all", "random_table", "rescaled"]

DEFAULT_TOL = 1e-10
RANDOM_SEED = 20240521


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_error: float
    threshold: float
    detail: str = ""
    seconds: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "max_error", float(self.max_error))


def _result(name, error, threshold, detail=""):
    error = float(error)
    return CheckResult(name, bool(error <= threshold), error, threshold, detail)


def _gegenbauer(lam):
    return make_family("gegenbauer", lam=lam)


def _jacobi(mu, nu):
    return make_family("jacobi", mu=mu, nu=nu)


def random_table(rng: np.random.Generator, size: int) -> RecurrenceTable:
    """Random valid table with ``f`` in (0, 2) and ``g`` in (-1, 1)."""
    f = rng.uniform(0.0, 2.0, size)
    f[f == 0.0] = 1.0
    return RecurrenceTable(f, rng.uniform(-1.0, 1.0, size))


def rescaled(table: RecurrenceTable, N: int, spectral_radius: float) -> RecurrenceTable:
    """Scale ``f`` and ``g`` so the ``N``-dimensional Jacobi matrix has the given spectral radius.

    Random tables can have spectra outside (-1, 1), where the inverse
    trigonometric functions are undefined.
    """
    values = eigendecompose(build_cosine(table, N)).values
    factor = spectral_radius / np.max(np.abs(values))
    return RecurrenceTable(table.f * factor, table.g * factor)


# 1 -------------------------------------------------------------------------

ORTHONORMAL_FAMILIES = (
    make_family("legendre"),
    make_family("chebyshev-t"),
    make_family("chebyshev-u"),
    _gegenbauer(-0.25),
    _gegenbauer(0.25),
    _gegenbauer(2.0),
    _jacobi(-0.5, 0.5),
    _jacobi(0.25, 0.5),
)


def gram_matrix(spec: FamilySpec, n_max: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Quadrature Gram matrix of ``p_0..p_{n_max}`` over (-1, 1)."""
    table = recurrence_table(spec, n_max)

    def integrand(x, one_plus, one_minus):
        p = eval_p_all(table, spec, n_max, x, one_minus, one_plus)
        return (p[:, None, :] * p[None, :, :]).reshape(-1, x.size)

    value = integrate(integrand, -1.0, 1.0, tol, gaps=True).value
    return np.asarray(value).reshape(n_max + 1, n_max + 1)


def check_orthonormality(tol=DEFAULT_TOL):
    worst, where = 0.0, ""
    for spec in ORTHONORMAL_FAMILIES:
        err = np.max(np.abs(gram_matrix(spec, 20, tol) - np.eye(21)))
        if err >= worst:
            worst, where = err, spec.label
    return _result("orthonormality", worst, 1e-8, f"8 families, n,m <= 20; worst {where}")


# 2 -------------------------------------------------------------------------

def check_fock_variances(tol=DEFAULT_TOL):
    cases = [("chebyshev-u", 0, 0.25)] + [("chebyshev-u", n, 0.5) for n in range(1, 8)]
    cases += [("chebyshev-t", 1, 0.75)] + [("chebyshev-t", n, 0.5) for n in (0, 2, 3)]
    worst = 0.0
    for kind, n, expected in cases:
        spec = make_family(kind)
        report = closed_form_report(recurrence_table(spec, 16), fock(n, 16))
        worst = max(worst, abs(report.var_C - expected), abs(report.var_S - expected))
    return _result("fock-variances", worst, 1e-13, f"{len(cases)} Fock states")


# 3 -------------------------------------------------------------------------

def check_fock_means(tol=DEFAULT_TOL):
    families = [make_family("legendre"), make_family("chebyshev-t"), _gegenbauer(-0.25),
                _jacobi(-0.5, 0.5), _jacobi(0.25, 0.5), _jacobi(-0.5, -0.25)]
    N = 12
    mean_err = quad_err = 0.0
    for spec in families:
        table = recurrence_table(spec, N)
        for n in range(N - 2):
            report = closed_form_report(table, fock(n, N))
            mean_err = max(mean_err, abs(report.mean_C - table.g[n]), abs(report.mean_S - table.g[n]))

        def integrand(x, one_plus, one_minus):
            return x * eval_p_all(table, spec, N - 3, x, one_minus, one_plus) ** 2

        quad = integrate(integrand, -1.0, 1.0, tol, gaps=True).value
        quad_err = max(quad_err, np.max(np.abs(quad - table.g[: N - 2])))
    # closed-form values for the (-1/2, 1/2) Jacobi family
    g = recurrence_table(_jacobi(-0.5, 0.5), N).g
    exact_err = max(abs(g[0] - 0.5), np.max(np.abs(g[1:])))
    passed = mean_err <= 1e-13 and exact_err <= 1e-13 and quad_err <= 1e-8
    detail = f"operator {mean_err:.2e} (<=1e-13), g values {exact_err:.2e} (<=1e-13), quadrature {quad_err:.2e} (<=1e-8)"
    return CheckResult("fock-means", passed, max(mean_err, exact_err, quad_err), 1e-8, detail)


# 4 -------------------------------------------------------------------------

def legendre_roots(N: int) -> np.ndarray:
    """Roots of the degree-``N`` Legendre polynomial by Newton iteration on the Bonnet recurrence."""
    k = np.arange(1, N + 1)
    x = np.cos(np.pi * (k - 0.25) / (N + 0.5))
    for _ in range(100):
        p_prev, p = np.ones_like(x), x.copy()
        for n in range(1, N):
            p_prev, p = p, ((2 * n + 1) * x * p - n * p_prev) / (n + 1)
        dp = N * (x * p - p_prev) / (x * x - 1.0)
        step = p / dp
        x = x - step
        if np.max(np.abs(step)) < 1e-16:
            break
    return np.sort(x)


def check_gauss_nodes(tol=DEFAULT_TOL):
    spec = make_family("legendre")
    table = recurrence_table(spec, 10)
    worst = 0.0
    for N in (2, 5, 10):
        values = eigendecompose(build_cosine(table, N)).values
        worst = max(worst, np.max(np.abs(values - legendre_roots(N))))
    two = eigendecompose(build_cosine(table, 2)).values
    worst = max(worst, np.max(np.abs(two - np.array([-1.0, 1.0]) / np.sqrt(3.0))))
    return _result("gauss-nodes", worst, 1e-10, "Legendre N in {2, 5, 10} against Newton roots")


# 5 -------------------------------------------------------------------------

def exact_identity_errors(table: RecurrenceTable, N: int) -> dict[str, float]:
    """Entrywise errors of the truncation-exact operator identities."""
    C, S = build_cosine(table, N).entries, build_sine(table, N).entries
    E, Edag, E0 = (op.entries for op in shift_ops(table, N))
    Nop = number_op(N).entries
    D = quadrature_rotation(N)
    I = np.eye(N)

    def comm(A, B):
        return A @ B - B @ A

    # the inverse trigonometric identities need a spectrum inside (-1, 1)
    scaled = rescaled(table, N, 0.95)
    Cs, Ss = build_cosine(scaled, N), build_sine(scaled, N)
    theta_c, theta_s = arccos_op(Cs), arcsin_op(Ss)
    Uc, Us = unitary_exp(theta_c).entries, unitary_exp(theta_s).entries
    Dm = quadrature_rotation(N, sign=-1)
    errs = {
        "shift decomposition": max(np.max(np.abs((E + Edag) / 2 + E0 - C)),
                                   np.max(np.abs((E - Edag) / 2j + E0 - S))),
        "number commutators": max(np.max(np.abs(comm(Nop, C) + 1j * (S - E0))),
                                  np.max(np.abs(comm(Nop, S) - 1j * (C - E0)))),
        "double commutator": np.max(np.abs(comm(Nop, comm(Nop, C)) - (C - E0))),
        "quadrature rotation": np.max(np.abs(D @ C @ D.conj().T - S)),
        "angle rotation": np.max(np.abs(Dm @ (0.5 * np.pi * I - theta_s.entries) @ Dm.conj().T
                                        - theta_c.entries)),
        "unitary shift sum": np.max(np.abs(0.5 * (Uc + Us + Uc.conj().T - Us.conj().T)
                                           - (Cs.entries + 1j * Ss.entries))),
    }
    return {k: float(v) for k, v in errs.items()}


def check_exact_identities(tol=DEFAULT_TOL, count=20, N=32):
    rng = np.random.default_rng(RANDOM_SEED)
    worst: dict[str, float] = {}
    for _ in range(count):
        table = random_table(rng, N)
        for name, err in exact_identity_errors(table, N).items():
            worst[name] = max(worst.get(name, 0.0), err)
    name = max(worst, key=worst.get)
    return _result("exact-identities", worst[name], 1e-12,
                   f"{count} random tables at N={N}; worst {name}")


# 6 -------------------------------------------------------------------------

def _bands(N, diag=None, upper1=None, lower1=None, upper2=None, lower2=None):
    """Matrix with ``M[n, n]``, ``M[n, n+1]``, ``M[n+1, n]``, ``M[n, n+2]``, ``M[n+2, n]`` given."""
    M = np.zeros((N, N), dtype=complex)
    n = np.arange(N)
    if diag is not None:
        M[n, n] = diag[:N]
    if upper1 is not None:
        M[n[:-1], n[1:]] = upper1[: N - 1]
        M[n[1:], n[:-1]] = lower1[: N - 1]
    if upper2 is not None:
        M[n[:-2], n[2:]] = upper2[: N - 2]
        M[n[2:], n[:-2]] = lower2[: N - 2]
    return M


def band_formula_matrices(table: RecurrenceTable, N: int) -> dict[str, np.ndarray]:
    """Squares and (anti)commutators assembled entry by entry from their band formulas."""
    f, g = table.f[: N + 1], table.g[: N + 1]
    f_prev = np.concatenate(([0.0], f[:-1]))
    n = np.arange(N + 1)
    diag_sq = 0.25 * (f**2 + f_prev**2 + 4 * g**2)
    gp = f[:-1] * (g[:-1] + g[1:])
    gm = f[:-1] * (g[:-1] - g[1:])
    ff = f[:-2] * f[1:-1]
    return {
        "C^2": _bands(N, diag_sq, 0.5 * gp, 0.5 * gp, 0.25 * ff, 0.25 * ff),
        "S^2": _bands(N, diag_sq, -0.5j * gp, 0.5j * gp, -0.25 * ff, -0.25 * ff),
        "[C,S]-": _bands(N, 0.5j * (f**2 - f_prev**2), -0.5 * gm - 0.5j * gm, 0.5 * gm - 0.5j * gm),
        "[C,S]+": _bands(N, 2 * g**2, 0.5 * gp - 0.5j * gp, 0.5 * gp + 0.5j * gp, -0.5j * ff, 0.5j * ff),
        "[N,C]+": _bands(N, 2 * n * g, (2 * n[:-1] + 1) * f[:-1] / 2, (2 * n[:-1] + 1) * f[:-1] / 2),
        "[N,S]+": _bands(N, 2 * n * g, (2 * n[:-1] + 1) * f[:-1] / 2j, -(2 * n[:-1] + 1) * f[:-1] / 2j),
    }


def interior_block_errors(table: RecurrenceTable, N: int) -> dict[str, float]:
    C, S, Nop = build_cosine(table, N), build_sine(table, N), number_op(N)
    computed = {
        "C^2": (C @ C).entries,
        "S^2": (S @ S).entries,
        "[C,S]-": commutator(C, S).entries,
        "[C,S]+": anticommutator(C, S).entries,
        "[N,C]+": anticommutator(Nop, C).entries,
        "[N,S]+": anticommutator(Nop, S).entries,
    }
    expected = band_formula_matrices(table, N)
    k = N - 2
    return {name: float(np.max(np.abs(computed[name][:k, :k] - expected[name][:k, :k])))
            for name in computed}


def check_interior_block(tol=DEFAULT_TOL, N=16):
    rng = np.random.default_rng(RANDOM_SEED + 1)
    tables = [recurrence_table(spec, N) for spec in (make_family("chebyshev-u"), _gegenbauer(-0.25),
                                                     _jacobi(-0.5, 0.5), _jacobi(0.25, 0.5))]
    tables += [random_table(rng, N + 1) for _ in range(5)]
    worst, where = 0.0, ""
    for table in tables:
        for name, err in interior_block_errors(table, N).items():
            if err >= worst:
                worst, where = err, name
    return _result("interior-block", worst, 1e-12,
                   f"{len(tables)} tables at N={N}, rows/cols 0..N-3; worst {where}")


# 7 -------------------------------------------------------------------------

def check_distribution_consistency(tol=DEFAULT_TOL):
    alpha = 1 + 1j
    moment_err = norm_err = 0.0
    for spec in (make_family("chebyshev-u"), _gegenbauer(-0.25)):
        N = 32
        table = recurrence_table(spec, N)
        state = coherent(alpha, N)
        report = coherent_report(table, alpha)
        pairs = [
            (moment(table, spec, state, 1, Variable.COSINE, tol), report.mean_C),
            (moment(table, spec, state, 2, Variable.COSINE, tol), report.mean_C2),
            (moment(table, spec, state, 1, Variable.SINE, tol), report.mean_S),
            (moment(table, spec, state, 2, Variable.SINE, tol), report.mean_S2),
        ]
        moment_err = max(moment_err, max(abs(a - b) for a, b in pairs))
        for variable in Variable:
            norm_err = max(norm_err, abs(moment(table, spec, state, 0, variable, tol) - 1.0))
    return _result("distribution-consistency", max(moment_err, norm_err), 1e-6,
                   f"moments {moment_err:.2e}, normalisation {norm_err:.2e}")


# 8 -------------------------------------------------------------------------

def check_classical_reference(tol=DEFAULT_TOL):
    spec = make_family("chebyshev-t")
    table = recurrence_table(spec, 8)
    vac = fock(0, 8)
    theta = display_grid(Variable.ARCCOS, 201)
    flat = np.max(np.abs(density_values(table, spec, vac, theta, Variable.ARCCOS) - 1.0 / np.pi))
    mean = moment(table, spec, vac, 1, Variable.ARCCOS, tol)
    var = moment(table, spec, vac, 2, Variable.ARCCOS, tol) - mean**2
    var_err = abs(var - np.pi**2 / 12)
    c = display_grid(Variable.COSINE, 201)
    cos_err = np.max(np.abs(density_values(table, spec, vac, c, Variable.COSINE)
                            - classical_density(Variable.COSINE, c).density))
    passed = flat <= 1e-12 and var_err <= 1e-8 and cos_err <= 1e-10
    detail = f"arccos density {flat:.2e} (<=1e-12), variance {var_err:.2e} (<=1e-8), cosine density {cos_err:.2e} (<=1e-10)"
    return CheckResult("classical-reference", passed, max(flat, var_err, cos_err), 1e-8, detail)


# 9 -------------------------------------------------------------------------

def _angle_variance(table, spec, state, variable, tol):
    mean = moment(table, spec, state, 1, variable, tol)
    return moment(table, spec, state, 2, variable, tol) - mean**2


def check_inverse_trig(tol=DEFAULT_TOL):
    N = 32
    cos_err = 0.0
    for spec in (make_family("legendre"), make_family("chebyshev-t"), make_family("chebyshev-u"),
                 _gegenbauer(-0.25), _jacobi(-0.5, 0.5)):
        C = build_cosine(recurrence_table(spec, N), N)
        back = matrix_function(arccos_op(C), np.cos, C.label)
        cos_err = max(cos_err, np.max(np.abs(back.entries - C.entries)))
    C8 = build_cosine(recurrence_table(make_family("chebyshev-u"), 8), 8)
    series_err = np.max(np.abs(arccos_series(C8, 200).operator.entries - arccos_op(C8).entries))
    var_err = 0.0
    for spec in (make_family("legendre"), make_family("chebyshev-u"), _gegenbauer(-0.25), _gegenbauer(2.0)):
        table = recurrence_table(spec, 8)
        for n in range(4):
            state = fock(n, 8)
            var_err = max(var_err, abs(_angle_variance(table, spec, state, Variable.ARCCOS, tol)
                                       - _angle_variance(table, spec, state, Variable.ARCSIN, tol)))
    passed = cos_err <= 1e-12 and series_err <= 1e-2 and var_err <= 1e-8
    detail = f"cos(arccos C) {cos_err:.2e} (<=1e-12), series {series_err:.2e} (<=1e-2), angle variances {var_err:.2e} (<=1e-8)"
    return CheckResult("inverse-trig", passed, max(cos_err, var_err), 1e-12, detail)


# 10 ------------------------------------------------------------------------

def f1_curve(spec: FamilySpec, alpha_abs, n_max: int = 512) -> np.ndarray:
    table = recurrence_table(spec, n_max)
    return np.array([coherent_fg(table, a).F1 for a in alpha_abs])


def check_classical_limit(tol=DEFAULT_TOL):
    alpha_abs = np.round(np.arange(0, 101) * 0.1, 10)
    monotone = {}
    for lam in (0.5, 1.0, 5.0, -0.25):
        monotone[lam] = bool(np.all(np.diff(f1_curve(_gegenbauer(lam), alpha_abs)) >= 0.0))
    shape_ok = monotone[0.5] and monotone[1.0] and monotone[5.0] and not monotone[-0.25]
    f1_20 = f1_curve(make_family("chebyshev-u"), [20.0], 1024)[0]
    limit_err = abs(f1_20 - 1.0)
    var_err = 0.0
    for lam in (-0.25, 1.0):
        spec = _gegenbauer(lam)
        table = recurrence_table(spec, 24)
        state = fock(20, 24)
        for variable in (Variable.ARCCOS, Variable.ARCSIN):
            var_err = max(var_err, abs(_angle_variance(table, spec, state, variable, tol) - np.pi**2 / 12))
    passed = shape_ok and limit_err < 0.05 and var_err < 0.05
    detail = (f"monotone {monotone}, |F1(20)-1| {limit_err:.3e} (<0.05), "
              f"n=20 angle variance gap {var_err:.3e} (<0.05)")
    return CheckResult("classical-limit", passed, max(limit_err, var_err), 0.05, detail)


# 11 ------------------------------------------------------------------------

def check_phase_degeneracy(tol=DEFAULT_TOL):
    N = 40
    x = display_grid(Variable.COSINE, 401)
    conj_err = quad_err = 0.0
    for spec in (make_family("chebyshev-u"), _gegenbauer(-0.25), _jacobi(-0.5, 0.5)):
        table = recurrence_table(spec, N)
        for r, phi in ((1.0, 0.3), (1.5, 1.1), (np.sqrt(2.0), np.pi / 4), (2.0, 2.5)):
            alpha = r * np.exp(1j * phi)
            plus = density_values(table, spec, coherent(alpha, N), x, Variable.COSINE)
            minus = density_values(table, spec, coherent(np.conj(alpha), N), x, Variable.COSINE)
            conj_err = max(conj_err, np.max(np.abs(plus - minus)))
            sine = density_values(table, spec, coherent(alpha, N), x, Variable.SINE)
            turned = density_values(table, spec, coherent(alpha * np.exp(-0.5j * np.pi), N), x, Variable.COSINE)
            quad_err = max(quad_err, np.max(np.abs(sine - turned)))
    refl_err = 0.0
    for mu, nu in ((-0.5, 0.5), (0.25, 0.5), (-0.5, -0.25)):
        a, b = _jacobi(mu, nu), _jacobi(nu, mu)
        ta, tb = recurrence_table(a, 12), recurrence_table(b, 12)
        for n in range(10):
            state = fock(n, 12)
            left = density_values(ta, a, state, -x, Variable.COSINE)
            right = density_values(tb, b, state, x, Variable.COSINE)
            refl_err = max(refl_err, np.max(np.abs(left - right) / np.maximum(1.0, np.abs(right))))
    passed = conj_err <= 1e-12 and quad_err <= 1e-10 and refl_err <= 1e-10
    detail = f"phi/-phi {conj_err:.2e} (<=1e-12), sine/cosine shift {quad_err:.2e} (<=1e-10), reflection {refl_err:.2e} (<=1e-10)"
    return CheckResult("phase-degeneracy", passed, max(conj_err, quad_err, refl_err), 1e-10, detail)


SUITES: dict[str, Callable[..., CheckResult]] = {
    "orthonormality": check_orthonormality,
    "fock-variances": check_fock_variances,
    "fock-means": check_fock_means,
    "gauss-nodes": check_gauss_nodes,
    "exact-identities": check_exact_identities,
    "interior-block": check_interior_block,
    "distribution-consistency": check_distribution_consistency,
    "classical-reference": check_classical_reference,
    "inverse-trig": check_inverse_trig,
    "classical-limit": check_classical_limit,
    "phase-degeneracy": check_phase_degeneracy,
}


def run_suite(name: str, tol: float = DEFAULT_TOL) -> CheckResult:
    start = time.perf_counter()
    result = SUITES[name](tol)
    return CheckResult(result.name, result.passed, result.max_error, result.threshold,
                       result.detail, time.perf_counter() - start)


def run_all(tol: float = DEFAULT_TOL) -> list[CheckResult]:
    return [run_suite(name, tol) for name in SUITES]
