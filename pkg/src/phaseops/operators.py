"""Truncated Fock-basis matrices for cosine, sine and related operators.

All builders take a :class:`~phaseops.families.RecurrenceTable` and a
truncation dimension ``N``. Tridiagonal structure makes several identities
exact in truncation (the shift decomposition, commutators with the number
operator, the quadrature rotation); anything quadratic in the cosine or sine
operators is only correct away from the last two rows and columns.

Spectral work is reduced to the real symmetric tridiagonal case: the sine
operator is unitarily equivalent to the cosine operator through
``D = diag(i**n)``, i.e. ``S = D C D^dagger``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NotHermitian,
    SpectrumOutOfRange,
)
from .families import RecurrenceTable

__all__ = [
    "Label",
    "TruncatedOperator",
    "Spectrum",
    "SeriesResult",
    "DEFAULT_DIM",
    "build_cosine",
    "build_sine",
    "shift_ops",
    "number_op",
    "identity_op",
    "quadrature_rotation",
    "eigendecompose",
    "matrix_function",
    "arccos_op",
    "arcsin_op",
    "arccos_series",
    "arcsin_series",
    "unitary_exp",
    "commutator",
    "anticommutator",
    "matmul",
    "add",
    "scale",
]

DEFAULT_DIM = 64
HERMITIAN_TOL = 1e-14


class Label(str, enum.Enum):
    C = "C"
    S = "S"
    E = "E"
    EDAG = "Edag"
    E0 = "E0"
    THETA_C = "ThetaC"
    THETA_S = "ThetaS"
    UC = "Uc"
    US = "Us"
    N = "N"
    DERIVED = "Derived"


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """An ``N x N`` complex matrix with a label.

    ``degree`` is the polynomial degree in the tridiagonal generators (``C``,
    ``S``, ``E``...), used to decide how much Fock-space margin an expectation
    value needs. ``None`` means "not a polynomial" (spectral functions), for
    which no margin rule applies.
    """

    label: Label
    entries: np.ndarray
    degree: int | None = 1

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"operator matrix must be square, got shape {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "label", Label(self.label))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def dagger(self) -> "TruncatedOperator":
        if self.label in (Label.E, Label.EDAG):
            label = Label.EDAG if self.label is Label.E else Label.E
        else:
            label = self.label if self.is_hermitian() else Label.DERIVED
        return TruncatedOperator(label, self.entries.conj().T, self.degree)

    def hermitian_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return self.hermitian_error() <= tol

    def __matmul__(self, other):
        return matmul(self, other)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, factor):
        return scale(self, factor)

    __rmul__ = __mul__


class Spectrum(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self, func: Callable[[np.ndarray], np.ndarray] | None = None) -> np.ndarray:
        vals = self.values if func is None else func(self.values)
        m = (self.vectors * vals) @ self.vectors.conj().T
        if np.isrealobj(vals):
            m = 0.5 * (m + m.conj().T)
        return m


class SeriesResult(NamedTuple):
    operator: TruncatedOperator
    residual: float


def _checked_dim(table: RecurrenceTable, N: int) -> int:
    if N < 1:
        raise ValueError("truncation dimension must be positive")
    table.require(N)
    return N


def build_cosine(table: RecurrenceTable, N: int = DEFAULT_DIM) -> TruncatedOperator:
    """Real symmetric tridiagonal matrix: diagonal ``g_n``, off-diagonal ``f_n / 2``."""
    N = _checked_dim(table, N)
    half = 0.5 * table.f[: N - 1]
    m = np.diag(table.g[:N]).astype(complex)
    m += np.diag(half, 1) + np.diag(half, -1)
    return TruncatedOperator(Label.C, m)


def build_sine(table: RecurrenceTable, N: int = DEFAULT_DIM) -> TruncatedOperator:
    """Hermitian tridiagonal matrix: diagonal ``g_n``, ``S[n, n+1] = -i f_n / 2``."""
    N = _checked_dim(table, N)
    half = 0.5 * table.f[: N - 1]
    m = np.diag(table.g[:N]).astype(complex)
    m += np.diag(-1j * half, 1) + np.diag(1j * half, -1)
    return TruncatedOperator(Label.S, m)


def shift_ops(table: RecurrenceTable, N: int = DEFAULT_DIM):
    """Lowering ``E``, raising ``E^dagger`` and diagonal ``E0`` parts.

    ``C = (E + E^dagger)/2 + E0`` and ``S = (E - E^dagger)/(2i) + E0``.
    """
    N = _checked_dim(table, N)
    e = np.diag(table.f[: N - 1], 1).astype(complex)
    return (
        TruncatedOperator(Label.E, e),
        TruncatedOperator(Label.EDAG, e.T.copy()),
        TruncatedOperator(Label.E0, np.diag(table.g[:N])),
    )


def number_op(N: int) -> TruncatedOperator:
    return TruncatedOperator(Label.N, np.diag(np.arange(N, dtype=float)), degree=0)


def identity_op(N: int) -> TruncatedOperator:
    return TruncatedOperator(Label.DERIVED, np.eye(N), degree=0)


def quadrature_rotation(N: int, sign: int = 1) -> np.ndarray:
    """``exp(sign * i pi N / 2) = diag((sign i)**n)`` as a dense matrix."""
    phases = np.array([1, 1j, -1, -1j])[(sign * np.arange(N)) % 4]
    return np.diag(phases)


def _tridiagonal_parts(m):
    diag = np.diag(m)
    off = np.diag(m, 1)
    rest = m - np.diag(diag) - np.diag(off, 1) - np.diag(np.diag(m, -1), -1)
    return diag, off, not np.any(rest)


def _normalise_phases(vectors):
    # first component above round-off made real positive
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        k = int(np.argmax(np.abs(col) > 1e-12 * np.max(np.abs(col))))
        out[:, j] = col * (abs(col[k]) / col[k])
    return out


def _eigh_tridiagonal(diag, off):
    try:
        values, vectors = eigh_tridiagonal(diag, off, lapack_driver="stev")
    except LinAlgError as exc:
        raise ConvergenceFailure(f"tridiagonal eigensolver failed: {exc}") from exc
    return values, vectors


def eigendecompose(op: TruncatedOperator) -> Spectrum:
    """Ascending eigenvalues and orthonormal eigenvectors of a Hermitian operator.

    Cosine-type (real tridiagonal) matrices go to a tridiagonal solver. Sine-type
    matrices are first rotated with ``D^dagger S D`` into real tridiagonal form,
    and the eigenvectors rotated back. Everything else uses a dense Hermitian
    solver. Each eigenvector's first non-negligible component is made real
    positive.
    """
    if not op.is_hermitian():
        raise NotHermitian(f"operator {op.label.value} is not Hermitian "
                           f"(deviation {op.hermitian_error():.3g})")
    m = op.entries
    n = op.dim
    diag, off, tridiagonal = _tridiagonal_parts(m)
    if tridiagonal and not np.any(diag.imag) and not np.any(off.imag):
        values, vectors = _eigh_tridiagonal(diag.real, off.real)
        vectors = vectors.astype(complex)
    elif tridiagonal and not np.any(diag.imag) and not np.any(off.real):
        # S = D T D^dagger with T real: T[n, n+1] = i * S[n, n+1]
        values, vectors = _eigh_tridiagonal(diag.real, (1j * off).real)
        vectors = quadrature_rotation(n) @ vectors
    else:
        try:
            values, vectors = np.linalg.eigh(m)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceFailure(f"Hermitian eigensolver failed: {exc}") from exc
    order = np.argsort(values, kind="stable")
    return Spectrum(values[order], _normalise_phases(vectors[:, order]))


def matrix_function(op: TruncatedOperator, func: Callable[[np.ndarray], np.ndarray],
                    label: Label = Label.DERIVED) -> TruncatedOperator:
    """``V func(Lambda) V^dagger`` for a Hermitian operator."""
    return TruncatedOperator(label, eigendecompose(op).reconstruct(func), degree=None)


def _inside_unit_interval(op, name):
    spectrum = eigendecompose(op)
    worst = float(np.max(np.abs(spectrum.values)))
    if worst >= 1.0:
        raise SpectrumOutOfRange(f"{name} needs spectrum inside (-1, 1); max |eigenvalue| = {worst:.17g}")
    return spectrum


def arccos_op(C: TruncatedOperator) -> TruncatedOperator:
    """Arccosine operator by spectral decomposition; eigenvalues in (0, pi)."""
    spectrum = _inside_unit_interval(C, "arccos")
    return TruncatedOperator(Label.THETA_C, spectrum.reconstruct(np.arccos), degree=None)


def arcsin_op(S: TruncatedOperator) -> TruncatedOperator:
    """Arcsine operator by spectral decomposition; eigenvalues in (-pi/2, pi/2)."""
    spectrum = _inside_unit_interval(S, "arcsin")
    return TruncatedOperator(Label.THETA_S, spectrum.reconstruct(np.arcsin), degree=None)


def _arcsin_series(op, K):
    # arcsin(x) = sum_k binom(2k, k) / (4**k (2k + 1)) x**(2k+1)
    if K < 1:
        raise ValueError("need at least one series term")
    _inside_unit_interval(op, "arcsine series")
    m = op.entries
    square = m @ m
    power = m.copy()
    coeff = 1.0
    total = np.zeros_like(m)
    term = power
    for k in range(K):
        term = coeff * power
        total += term
        power = power @ square
        coeff *= (2 * k + 1) ** 2 / (2.0 * (k + 1) * (2 * k + 3))
    return total, float(np.max(np.abs(term)))


def arccos_series(C: TruncatedOperator, K: int) -> SeriesResult:
    """Truncated power series ``pi/2 - sum_{k<K} a_k C**(2k+1)``.

    The residual is the max-entry size of the last term included; the series
    converges slowly when eigenvalues approach +-1.
    """
    total, residual = _arcsin_series(C, K)
    m = 0.5 * np.pi * np.eye(C.dim) - total
    return SeriesResult(TruncatedOperator(Label.THETA_C, m, degree=None), residual)


def arcsin_series(S: TruncatedOperator, K: int) -> SeriesResult:
    total, residual = _arcsin_series(S, K)
    return SeriesResult(TruncatedOperator(Label.THETA_S, total, degree=None), residual)


def unitary_exp(theta: TruncatedOperator) -> TruncatedOperator:
    """``exp(i Theta)`` through the spectral decomposition of ``Theta``."""
    label = {Label.THETA_C: Label.UC, Label.THETA_S: Label.US}.get(theta.label, Label.DERIVED)
    m = eigendecompose(theta).reconstruct(lambda v: np.exp(1j * v))
    return TruncatedOperator(label, m, degree=None)


def _check_dims(A, B):
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimension mismatch: {A.dim} vs {B.dim}")


def _sum_degree(A, B):
    return None if A.degree is None or B.degree is None else A.degree + B.degree


def matmul(A: TruncatedOperator, B: TruncatedOperator) -> TruncatedOperator:
    _check_dims(A, B)
    return TruncatedOperator(Label.DERIVED, A.entries @ B.entries, _sum_degree(A, B))


def add(A: TruncatedOperator, B: TruncatedOperator) -> TruncatedOperator:
    _check_dims(A, B)
    degree = None if A.degree is None or B.degree is None else max(A.degree, B.degree)
    return TruncatedOperator(Label.DERIVED, A.entries + B.entries, degree)


def scale(A: TruncatedOperator, factor: complex) -> TruncatedOperator:
    return TruncatedOperator(Label.DERIVED, factor * A.entries, A.degree)


def commutator(A: TruncatedOperator, B: TruncatedOperator) -> TruncatedOperator:
    """``[A, B] = AB - BA``."""
    _check_dims(A, B)
    return TruncatedOperator(Label.DERIVED, A.entries @ B.entries - B.entries @ A.entries,
                             _sum_degree(A, B))


def anticommutator(A: TruncatedOperator, B: TruncatedOperator) -> TruncatedOperator:
    """``[A, B]_+ = AB + BA``."""
    _check_dims(A, B)
    return TruncatedOperator(Label.DERIVED, A.entries @ B.entries + B.entries @ A.entries,
                             _sum_degree(A, B))
