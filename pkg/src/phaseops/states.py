"""Density states in the truncated Fock basis and their expectation values.

Two independent routes are provided for every quantity:

* closed-form sums over the density-matrix bands ``rho[n, n]``,
  ``rho[n+1, n]`` and ``rho[n+2, n]`` (:func:`closed_form_report`), and for
  coherent states over Poisson-weighted coefficient series
  (:func:`coherent_fg`, :func:`coherent_report`);
* traces of the density matrix against explicitly built operator matrices
  (:func:`trace_report`).

Quadratic operators couple ``n`` to ``n +- 2`` and truncation corrupts the last
two Fock levels, so a state must keep its support at or below ``N - 3``.
"""

from __future__ import annotations

import cmath
from dataclasses import asdict, dataclass, fields

import numpy as np
from scipy.special import gammaln, pdtrc

from .errors import (
    DimensionMismatch,
    InvalidState,
    NonConvergence,
    SupportExceedsTruncation,
    TruncationInsufficient,
)
from .families import RecurrenceTable
from .operators import (
    TruncatedOperator,
    anticommutator,
    build_cosine,
    build_sine,
    commutator,
    number_op,
)

__all__ = [
    "DensityState",
    "FGFunctions",
    "ExpectationReport",
    "fock",
    "coherent",
    "pure",
    "from_matrix",
    "expect",
    "closed_form_report",
    "trace_report",
    "coherent_fg",
    "coherent_report",
    "coherent_cutoff",
    "QUADRATIC_MARGIN",
]

QUADRATIC_MARGIN = 2
COHERENT_TAIL_TOL = 1e-14
SERIES_TAIL_TOL = 1e-15
SERIES_TERM_CAP = 100_000


@dataclass(frozen=True, eq=False)
class DensityState:
    rho: np.ndarray
    support: int
    origin: str = "custom"

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @property
    def margin(self) -> int:
        return self.dim - 1 - self.support


def _validate(rho, trace_tol=1e-12):
    rho = np.array(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
        raise InvalidState(f"density matrix must be square, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > 1e-14:
        raise InvalidState(f"density matrix is not Hermitian (deviation {herm:.3g})")
    trace = np.trace(rho).real
    if abs(trace - 1.0) > trace_tol:
        raise InvalidState(f"density matrix trace is {trace:.17g}, expected 1")
    lowest = np.linalg.eigvalsh(rho).min()
    if lowest < -1e-12:
        raise InvalidState(f"density matrix has negative eigenvalue {lowest:.3g}")
    rho.flags.writeable = False
    return rho


def _support(rho):
    nonzero = np.nonzero(np.any(rho != 0, axis=0) | np.any(rho != 0, axis=1))[0]
    return int(nonzero[-1]) if nonzero.size else 0


def from_matrix(rho, origin: str = "custom") -> DensityState:
    """Validate a user-supplied density matrix. Nothing is repaired."""
    rho = _validate(rho)
    return DensityState(rho, _support(rho), origin)


def pure(psi, origin: str = "custom") -> DensityState:
    psi = np.asarray(psi, dtype=complex)
    return from_matrix(np.outer(psi, psi.conj()), origin)


def fock(n: int, N: int) -> DensityState:
    """Number state ``|n><n|`` in dimension ``N``; requires ``n <= N - 3``."""
    if n < 0:
        raise ValueError("Fock index must be non-negative")
    if n > N - 1 - QUADRATIC_MARGIN:
        raise SupportExceedsTruncation(
            f"fock({n}) needs dimension >= {n + 1 + QUADRATIC_MARGIN}, got {N}"
        )
    rho = np.zeros((N, N), dtype=complex)
    rho[n, n] = 1.0
    rho.flags.writeable = False
    return DensityState(rho, n, f"fock:{n}")


def coherent_cutoff(alpha_abs: float, tail_tol: float = COHERENT_TAIL_TOL) -> int:
    """Smallest ``n`` whose cumulative Poisson mass reaches ``1 - tail_tol``."""
    mean = float(alpha_abs) ** 2
    if mean == 0.0:
        return 0
    n = int(mean)
    while pdtrc(n, mean) > tail_tol:
        n += 1
    # step back while the previous index already qualifies
    while n > 0 and pdtrc(n - 1, mean) <= tail_tol:
        n -= 1
    return n


def _coherent_amplitudes(alpha, size):
    a = abs(alpha)
    n = np.arange(size)
    if a == 0.0:
        amp = (n == 0).astype(float)
    else:
        amp = np.exp(-0.5 * a * a + n * np.log(a) - 0.5 * gammaln(n + 1))
    return amp * np.exp(1j * n * cmath.phase(alpha))


def coherent(alpha: complex, N: int, tail_tol: float = COHERENT_TAIL_TOL) -> DensityState:
    """Truncated coherent state; raises if the Poisson tail does not fit in ``N - 3`` levels."""
    alpha = complex(alpha)
    support = coherent_cutoff(abs(alpha), tail_tol)
    required = support + 1 + QUADRATIC_MARGIN
    if required > N:
        raise TruncationInsufficient(
            f"coherent state |alpha|={abs(alpha):g} needs dimension >= {required} "
            f"for tail tolerance {tail_tol:g}, got {N}",
            required_dim=required,
        )
    psi = _coherent_amplitudes(alpha, N)
    rho = np.outer(psi, psi.conj())
    rho.flags.writeable = False
    label = f"coherent:{alpha.real:g},{alpha.imag:g}"
    return DensityState(rho, support, label)


def _check_margin(state, op):
    if op.degree is not None and op.degree >= 2 and state.support > state.dim - 1 - op.degree:
        raise SupportExceedsTruncation(
            f"state support {state.support} too close to truncation {state.dim} "
            f"for an operator of degree {op.degree}"
        )


def expect(state: DensityState, op: TruncatedOperator) -> complex:
    """``Tr(rho A)``."""
    if state.dim != op.dim:
        raise DimensionMismatch(f"state dimension {state.dim} vs operator {op.dim}")
    _check_margin(state, op)
    return complex(np.sum(state.rho * op.entries.T))


@dataclass(frozen=True)
class ExpectationReport:
    """Means, second moments, (anti)commutators, variances and uncertainty products.

    Commutator fields hold imaginary parts: the expectation of ``[A, B]`` for
    Hermitian ``A``, ``B`` is purely imaginary.
    """

    mean_C: float
    mean_S: float
    mean_C2: float
    mean_S2: float
    comm_CS: float
    acomm_CS: float
    comm_NC: float
    comm_NS: float
    acomm_NC: float
    acomm_NS: float
    var_C: float
    var_S: float
    cov_CS: float
    cov_NC: float
    cov_NS: float
    mean_N: float
    var_N: float
    uncertainty_CS_lhs: float
    uncertainty_CS_rhs: float
    uncertainty_NC_lhs: float
    uncertainty_NC_rhs: float
    uncertainty_NS_lhs: float
    uncertainty_NS_rhs: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def _assemble(**sums):
    m = {name: float(value) for name, value in sums.items()}
    var_C = m["mean_C2"] - m["mean_C"] ** 2
    var_S = m["mean_S2"] - m["mean_S"] ** 2
    var_N = m.pop("mean_N2") - m["mean_N"] ** 2
    return ExpectationReport(
        **m,
        var_C=var_C,
        var_S=var_S,
        var_N=var_N,
        cov_CS=0.5 * m["acomm_CS"] - m["mean_C"] * m["mean_S"],
        cov_NC=0.5 * m["acomm_NC"] - m["mean_N"] * m["mean_C"],
        cov_NS=0.5 * m["acomm_NS"] - m["mean_N"] * m["mean_S"],
        uncertainty_CS_lhs=var_C * var_S,
        uncertainty_CS_rhs=0.25 * m["comm_CS"] ** 2,
        uncertainty_NC_lhs=var_N * var_C,
        uncertainty_NC_rhs=0.25 * m["comm_NC"] ** 2,
        uncertainty_NS_lhs=var_N * var_S,
        uncertainty_NS_rhs=0.25 * m["comm_NS"] ** 2,
    )


def _band_report(table, diag, sub1, sub2):
    K = diag.size
    f, g = table.f[:K], table.g[:K]
    f_prev = np.concatenate(([0.0], f[:-1]))
    n = np.arange(K)
    # pairs (n, n+1) and (n, n+2)
    f1, g_plus, g_minus = f[:-1], g[:-1] + g[1:], g[:-1] - g[1:]
    ff = f[:-2] * f[1:-1]
    re1, im1 = sub1.real, sub1.imag
    re2, im2 = sub2.real, sub2.imag

    diag_quad = 0.25 * np.sum((f**2 + f_prev**2 + 4 * g**2) * diag)
    shift = np.sum(g * diag)
    return _assemble(
        mean_C=np.sum(f1 * re1) + shift,
        mean_S=np.sum(f1 * im1) + shift,
        mean_C2=diag_quad + 0.5 * np.sum(ff * re2) + np.sum(f1 * g_plus * re1),
        mean_S2=diag_quad - 0.5 * np.sum(ff * re2) + np.sum(f1 * g_plus * im1),
        comm_CS=0.5 * np.sum((f**2 - f_prev**2) * diag) - np.sum(f1 * g_minus * (re1 + im1)),
        acomm_CS=2 * np.sum(g**2 * diag) + np.sum(ff * im2) + np.sum(f1 * g_plus * (re1 + im1)),
        comm_NC=-np.sum(f1 * im1),
        comm_NS=np.sum(f1 * re1),
        acomm_NC=np.sum((2 * n[:-1] + 1) * f1 * re1) + 2 * np.sum(n * g * diag),
        acomm_NS=np.sum((2 * n[:-1] + 1) * f1 * im1) + 2 * np.sum(n * g * diag),
        mean_N=np.sum(n * diag),
        mean_N2=np.sum(n**2 * diag),
    )


def _require_quadratic_margin(state):
    if state.margin < QUADRATIC_MARGIN:
        raise SupportExceedsTruncation(
            f"state support {state.support} leaves fewer than {QUADRATIC_MARGIN} "
            f"levels below truncation {state.dim}"
        )


def closed_form_report(table: RecurrenceTable, state: DensityState) -> ExpectationReport:
    """All report fields from band sums over ``rho[n,n]``, ``rho[n+1,n]``, ``rho[n+2,n]``."""
    _require_quadratic_margin(state)
    table.require(state.dim)
    rho = state.rho
    return _band_report(table, np.diag(rho).real, np.diag(rho, -1), np.diag(rho, -2))


def trace_report(table: RecurrenceTable, state: DensityState) -> ExpectationReport:
    """Same fields as :func:`closed_form_report`, from matrix traces."""
    _require_quadratic_margin(state)
    N = state.dim
    C, S, Nop = build_cosine(table, N), build_sine(table, N), number_op(N)

    def ev(op):
        return expect(state, op)

    return _assemble(
        mean_C=ev(C).real,
        mean_S=ev(S).real,
        mean_C2=ev(C @ C).real,
        mean_S2=ev(S @ S).real,
        comm_CS=ev(commutator(C, S)).imag,
        acomm_CS=ev(anticommutator(C, S)).real,
        comm_NC=ev(commutator(Nop, C)).imag,
        comm_NS=ev(commutator(Nop, S)).imag,
        acomm_NC=ev(anticommutator(Nop, C)).real,
        acomm_NS=ev(anticommutator(Nop, S)).real,
        mean_N=ev(Nop).real,
        mean_N2=ev(Nop @ Nop).real,
    )


@dataclass(frozen=True)
class FGFunctions:
    F1: float
    F2: float
    Fplus: float
    Fminus: float
    G1: float
    G2: float
    Gplus: float
    Gminus: float
    alpha_abs: float
    terms_used: int


def _poisson_terms(alpha_abs, tail_tol, cap):
    """Poisson weights ``exp(-a^2) a^(2n) / n!`` until they drop below ``tail_tol * max``."""
    a = float(alpha_abs)
    if a == 0.0:
        return np.array([1.0])
    mean = a * a
    size = int(mean + 10 * a + 64)
    while True:
        size = min(size, cap)
        n = np.arange(size)
        pmf = np.exp(-mean + 2 * n * np.log(a) - gammaln(n + 1))
        peak = np.maximum.accumulate(pmf)
        below = np.nonzero((n > mean) & (pmf < tail_tol * peak))[0]
        if below.size:
            return pmf[: below[0] + 1]
        if size >= cap:
            raise NonConvergence(f"coherent series did not converge within {cap} terms")
        size *= 2


def _coherent_bands(table, alpha_abs, tail_tol, cap):
    pmf = _poisson_terms(alpha_abs, tail_tol, cap)
    K = pmf.size + 2
    table.require(K)
    n = np.arange(K)
    weights = np.concatenate((pmf, [0.0, 0.0]))
    a = float(alpha_abs)
    # |rho[n+1, n]| / pmf(n) = a / sqrt(n+1);  |rho[n+2, n]| / pmf(n) = a^2 / sqrt((n+1)(n+2))
    ratio1 = a / np.sqrt(n[:-1] + 1)
    ratio2 = a * a / np.sqrt((n[:-2] + 1) * (n[:-2] + 2))
    return weights, weights[:-1] * ratio1, weights[:-2] * ratio2, pmf.size


def coherent_fg(table: RecurrenceTable, alpha_abs: float, tail_tol: float = SERIES_TAIL_TOL,
                max_terms: int = SERIES_TERM_CAP) -> FGFunctions:
    """The |alpha|-dependent coefficient series for coherent-state expectations."""
    if alpha_abs < 0:
        raise ValueError("alpha_abs must be non-negative")
    diag, sub1, sub2, used = _coherent_bands(table, alpha_abs, tail_tol, max_terms)
    K = diag.size
    f, g = table.f[:K], table.g[:K]
    f_prev = np.concatenate(([0.0], f[:-1]))
    f1 = f[:-1]
    return FGFunctions(
        F1=float(np.sum(f1 * sub1)),
        F2=float(np.sum(f[:-2] * f[1:-1] * sub2)),
        Fplus=float(np.sum(0.5 * (f**2 + f_prev**2) * diag)),
        Fminus=float(np.sum(0.5 * (f**2 - f_prev**2) * diag)),
        G1=float(np.sum(g * diag)),
        G2=float(np.sum(g**2 * diag)),
        Gplus=float(np.sum(f1 * (g[:-1] + g[1:]) * sub1)),
        Gminus=float(np.sum(f1 * (g[:-1] - g[1:]) * sub1)),
        alpha_abs=float(alpha_abs),
        terms_used=used,
    )


def coherent_report(table: RecurrenceTable, alpha: complex, tail_tol: float = SERIES_TAIL_TOL,
                    max_terms: int = SERIES_TERM_CAP) -> ExpectationReport:
    """Coherent-state report from the F/G series, without building any matrix.

    Means, variances, the cosine-sine correlation and the commutators come
    from the F/G closed forms. The number-operator anticommutators need two
    further Poisson sums, evaluated the same way.
    """
    alpha = complex(alpha)
    a, phi = abs(alpha), cmath.phase(alpha)
    c, s = np.cos(phi), np.sin(phi)
    fg = coherent_fg(table, a, tail_tol, max_terms)
    F1, F2, Fp, Fm, G1, G2, Gp, Gm = (fg.F1, fg.F2, fg.Fplus, fg.Fminus,
                                      fg.G1, fg.G2, fg.Gplus, fg.Gminus)

    mean_C = F1 * c + G1
    mean_S = F1 * s + G1
    common = 0.5 * (Fp - F2) + G2 - G1**2
    var_C = (F2 - F1**2) * c**2 + common + (Gp - 2 * F1 * G1) * c
    var_S = (F2 - F1**2) * s**2 + common + (Gp - 2 * F1 * G1) * s
    cov_CS = (F2 - F1**2) * c * s + 0.5 * (Gp - 2 * F1 * G1) * (c + s) + G2 - G1**2

    diag, sub1, _, _ = _coherent_bands(table, a, tail_tol, max_terms)
    n = np.arange(diag.size)
    H1 = float(np.sum((2 * n[:-1] + 1) * table.f[: diag.size - 1] * sub1))
    H2 = float(2 * np.sum(n * table.g[: diag.size] * diag))

    mean_N = a * a
    return _assemble(
        mean_C=mean_C,
        mean_S=mean_S,
        mean_C2=var_C + mean_C**2,
        mean_S2=var_S + mean_S**2,
        comm_CS=Fm - Gm * (c + s),
        acomm_CS=2 * (cov_CS + mean_C * mean_S),
        comm_NC=-F1 * s,
        comm_NS=F1 * c,
        acomm_NC=H1 * c + H2,
        acomm_NS=H1 * s + H2,
        mean_N=mean_N,
        mean_N2=mean_N**2 + mean_N,
    )
