"""Cosine, sine, arccosine and arcsine probability densities.

For a density matrix ``rho`` the cosine density is

    P(c) = sum_n rho[n,n] p_n(c)**2 + 2 sum_{m>n} Re(rho[m,n]) p_m(c) p_n(c)

and the sine density uses the phase-shifted elements
``rho[m,n] * (-i)**(m-n)``. The angle densities replace ``p_n`` by ``c_n`` or
``s_n``. Moments are always computed with :mod:`phaseops.quadrature` over the
open domain, never from a display grid.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb
from typing import Callable

import numpy as np

from . import __version__
from .errors import DomainError
from .families import AngleKind, FamilySpec, RecurrenceTable, eval_angle_all, eval_p_all
from .quadrature import DEFAULT_TOL, integrate
from .states import DensityState, fock

__all__ = [
    "Variable",
    "DistributionGrid",
    "DEFAULT_MARGIN",
    "domain",
    "display_grid",
    "representation",
    "density",
    "density_values",
    "classical_density",
    "moment",
    "classical_moment",
    "moment_relation_check",
]

DEFAULT_MARGIN = 1e-6


class Variable(str, enum.Enum):
    COSINE = "cosine"
    SINE = "sine"
    ARCCOS = "arccos"
    ARCSIN = "arcsin"

    @property
    def phased(self) -> bool:
        return self in (Variable.SINE, Variable.ARCSIN)


def domain(variable: Variable | str) -> tuple[float, float]:
    variable = Variable(variable)
    if variable is Variable.ARCCOS:
        return 0.0, np.pi
    if variable is Variable.ARCSIN:
        return -0.5 * np.pi, 0.5 * np.pi
    return -1.0, 1.0


@dataclass(frozen=True, eq=False)
class DistributionGrid:
    variable: Variable
    points: np.ndarray
    density: np.ndarray
    meta: dict = field(default_factory=dict)


def display_grid(variable: Variable | str, count: int, margin: float = DEFAULT_MARGIN) -> np.ndarray:
    """``count`` uniform points spanning the domain shrunk by ``margin`` at each end."""
    if count < 1:
        raise ValueError("grid needs at least one point")
    lo, hi = domain(variable)
    if not 0.0 < margin < 0.5 * (hi - lo):
        raise ValueError(f"margin must lie in (0, {0.5 * (hi - lo):g})")
    if count == 1:
        return np.array([0.5 * (lo + hi)])
    return np.linspace(lo + margin, hi - margin, count)


def _gaps(variable, x, left_gap, right_gap):
    lo, hi = domain(variable)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if left_gap is None:
        if np.any(x <= lo) or np.any(x >= hi) or np.any(np.isnan(x)):
            raise DomainError(f"{variable.value} points must lie in the open interval ({lo:.6g}, {hi:.6g})")
        left_gap, right_gap = x - lo, hi - x
    return x, left_gap, right_gap


def _basis(table, spec, n_max, variable, x, left_gap, right_gap):
    # real basis functions, shape (n_max + 1, len(x)); sine phases are applied separately
    if variable in (Variable.COSINE, Variable.SINE):
        return eval_p_all(table, spec, n_max, x, right_gap, left_gap)
    kind = AngleKind.COSINE if variable is Variable.ARCCOS else AngleKind.SINE
    return eval_angle_all(table, spec, n_max, x, kind, left_gap, right_gap)


def _phases(size):
    return np.array([1, -1j, -1, 1j])[np.arange(size) % 4]


def representation(table: RecurrenceTable, spec: FamilySpec, psi, x, variable: Variable | str):
    """Wavefunction ``<x|psi>`` in the chosen representation (complex)."""
    variable = Variable(variable)
    psi = np.asarray(psi, dtype=complex)
    scalar = np.ndim(x) == 0
    x, left, right = _gaps(variable, x, None, None)
    basis = _basis(table, spec, psi.size - 1, variable, x, left, right)
    coeffs = psi * _phases(psi.size) if variable.phased else psi
    values = coeffs @ basis
    return complex(values[0]) if scalar else values


def _symmetric_weights(rho, variable):
    size = rho.shape[0]
    if variable.phased:
        k = np.arange(size)
        rho = rho * _phases(4)[(k[:, None] - k[None, :]) % 4]
    real = rho.real
    # Hermitian rho: real part is symmetric, so fold the lower triangle onto the upper
    return np.diag(np.diag(real)) + 2.0 * np.triu(real, 1)


def density_values(table: RecurrenceTable, spec: FamilySpec, state: DensityState, x,
                   variable: Variable | str, left_gap=None, right_gap=None) -> np.ndarray:
    """Density at ``x``; ``left_gap``/``right_gap`` are exact distances to the domain ends."""
    variable = Variable(variable)
    x, left, right = _gaps(variable, x, left_gap, right_gap)
    size = state.support + 1
    table.require(size)
    weights = _symmetric_weights(state.rho[:size, :size], variable)
    basis = _basis(table, spec, size - 1, variable, x, left, right)
    return np.einsum("mk,mn,nk->k", basis, weights, basis)


def density(table: RecurrenceTable, spec: FamilySpec, state: DensityState, points,
            variable: Variable | str, margin: float | None = None) -> DistributionGrid:
    variable = Variable(variable)
    points = np.asarray(points, dtype=float)
    values = density_values(table, spec, state, points, variable)
    meta = {
        "family": spec.label,
        "state": state.origin,
        "variable": variable.value,
        "margin": margin,
        "version": __version__,
    }
    return DistributionGrid(variable, points, values, meta)


def _classical_values(variable, x, left, right):
    if variable in (Variable.COSINE, Variable.SINE):
        return 1.0 / (np.pi * np.sqrt(left * right))
    return np.full(x.shape, 1.0 / np.pi)


def classical_density(variable: Variable | str, points) -> DistributionGrid:
    """Classical reference: ``1/(pi sqrt(1 - x^2))`` for cosine/sine, ``1/pi`` for angles."""
    variable = Variable(variable)
    x, left, right = _gaps(variable, points, None, None)
    meta = {"family": "classical", "state": "classical", "variable": variable.value,
            "version": __version__}
    return DistributionGrid(variable, x, _classical_values(variable, x, left, right), meta)


def _as_function(F):
    if callable(F):
        return F
    k = int(F)
    if k < 0:
        raise ValueError("power must be non-negative")
    return lambda x: x**k


def _moment(density_fn, F, variable, tol):
    func = _as_function(F)
    lo, hi = domain(variable)

    def integrand(x, left, right):
        return func(x) * density_fn(x, left, right)

    return float(integrate(integrand, lo, hi, tol, gaps=True).value)


def moment(table: RecurrenceTable, spec: FamilySpec, state: DensityState, F: int | Callable,
           variable: Variable | str, tol: float = DEFAULT_TOL) -> float:
    """``int F(x) P(x) dx`` over the open domain; ``F`` is a power ``k`` or a vectorised callable."""
    variable = Variable(variable)
    return _moment(
        lambda x, left, right: density_values(table, spec, state, x, variable, left, right),
        F, variable, tol,
    )


def classical_moment(variable: Variable | str, F: int | Callable, tol: float = DEFAULT_TOL) -> float:
    variable = Variable(variable)
    return _moment(lambda x, left, right: _classical_values(variable, x, left, right),
                   F, variable, tol)


def moment_relation_check(table: RecurrenceTable, spec: FamilySpec, n: int, k: int,
                          tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Arccosine moment of ``|n>`` next to its expansion in arcsine moments.

    ``lhs = <theta_c^k>``; ``rhs = sum_l (-1)^l C(k, l) (pi/2)^(k-l) <theta_s^l>``.
    Both sides come from independent quadratures of the two angle densities.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    state = fock(n, n + 3)
    lhs = moment(table, spec, state, k, Variable.ARCCOS, tol)
    rhs = (0.5 * np.pi) ** k
    for l in range(1, k + 1):
        rhs += (-1) ** l * comb(k, l) * (0.5 * np.pi) ** (k - l) * moment(
            table, spec, state, l, Variable.ARCSIN, tol)
    return lhs, float(rhs)
