"""Classical orthogonal polynomial families on [-1, 1].

Each family is described by a :class:`FamilySpec` and, up to a cutoff, by a
:class:`RecurrenceTable` holding the orthonormal three-term recurrence

    x p_n(x) = (f_n / 2) p_{n+1}(x) + (f_{n-1} / 2) p_{n-1}(x) + g_n p_n(x),

with ``f_{-1} = 0``, together with the norms ``d_n`` of the conventional
(unnormalised) polynomials. The eigenfunction systems are

    p_n(x)      = sqrt(w(x)) * Pbar_n(x)
    c_n(theta)  = sqrt(sin theta) * p_n(cos theta),   0 < theta < pi
    s_n(theta)  = sqrt(cos theta) * p_n(sin theta),   -pi/2 < theta < pi/2

Every weight here has the form ``(1 - x)**a * (1 + x)**b``. Evaluation routines
accept the gaps ``1 - x`` and ``1 + x`` explicitly so that endpoint-singular
weights stay accurate arbitrarily close to the endpoints.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import (
    DomainError,
    GegenbauerLambdaZero,
    InvalidTable,
    ParameterOutOfRange,
    TableTooShort,
)

__all__ = [
    "Kind",
    "AngleKind",
    "FamilySpec",
    "RecurrenceTable",
    "make_family",
    "recurrence_table",
    "weight",
    "weight_from_gaps",
    "eval_p",
    "eval_p_all",
    "eval_angle",
    "eval_angle_all",
    "orthonormal_polynomials",
]


class Kind(str, enum.Enum):
    JACOBI = "jacobi"
    GEGENBAUER = "gegenbauer"
    LEGENDRE = "legendre"
    CHEBYSHEV_T = "chebyshev-t"
    CHEBYSHEV_U = "chebyshev-u"


class AngleKind(str, enum.Enum):
    COSINE = "cosine"
    SINE = "sine"


@dataclass(frozen=True)
class FamilySpec:
    kind: Kind
    mu: float | None = None
    nu: float | None = None
    lam: float | None = None

    @property
    def symmetric(self) -> bool:
        return self.kind is not Kind.JACOBI or self.mu == self.nu

    @property
    def exponents(self) -> tuple[float, float]:
        """Exponents ``(a, b)`` of ``w(x) = (1 - x)**a (1 + x)**b``."""
        if self.kind is Kind.JACOBI:
            return self.mu, self.nu
        if self.kind is Kind.GEGENBAUER:
            return self.lam - 0.5, self.lam - 0.5
        if self.kind is Kind.LEGENDRE:
            return 0.0, 0.0
        if self.kind is Kind.CHEBYSHEV_T:
            return -0.5, -0.5
        return 0.5, 0.5

    @property
    def label(self) -> str:
        if self.kind is Kind.JACOBI:
            return f"jacobi(mu={self.mu:g},nu={self.nu:g})"
        if self.kind is Kind.GEGENBAUER:
            return f"gegenbauer(lambda={self.lam:g})"
        return self.kind.value


def make_family(kind: Kind | str, mu=None, nu=None, lam=None) -> FamilySpec:
    """Validate parameters and build a :class:`FamilySpec`.

    >>> make_family("gegenbauer", lam=1.0).symmetric
    True
    """
    kind = Kind(kind)
    if kind is Kind.JACOBI:
        if mu is None or nu is None:
            raise ParameterOutOfRange("jacobi family needs both mu and nu")
        mu, nu = float(mu), float(nu)
        if not (mu > -1.0 and nu > -1.0):
            raise ParameterOutOfRange(f"jacobi needs mu > -1 and nu > -1, got ({mu}, {nu})")
        return FamilySpec(kind, mu=mu, nu=nu)
    if kind is Kind.GEGENBAUER:
        if lam is None:
            raise ParameterOutOfRange("gegenbauer family needs lambda")
        lam = float(lam)
        if lam == 0.0:
            raise GegenbauerLambdaZero(
                "lambda = 0 is degenerate; use the chebyshev-t family for the limit"
            )
        if not lam > -0.5:
            raise ParameterOutOfRange(f"gegenbauer needs lambda > -1/2, got {lam}")
        return FamilySpec(kind, lam=lam)
    if mu is not None or nu is not None or lam is not None:
        raise ParameterOutOfRange(f"{kind.value} takes no parameters")
    return FamilySpec(kind)


@dataclass(frozen=True)
class RecurrenceTable:
    """Coefficients ``f_n``, ``g_n`` and norms ``d_n`` for ``n = 0..n_max``.

    Tables for non-classical weights may be built directly from arrays; only
    the positivity invariants are checked. ``d[0]`` must then be the zeroth
    moment of the weight, since it fixes ``Pbar_0 = 1 / sqrt(d_0)``.
    """

    f: np.ndarray
    g: np.ndarray
    d: np.ndarray = field(default=None)

    def __post_init__(self):
        f = np.array(self.f, dtype=float)
        g = np.array(self.g, dtype=float)
        d = np.ones_like(f) if self.d is None else np.array(self.d, dtype=float)
        if f.ndim != 1 or f.shape != g.shape or f.shape != d.shape or f.size == 0:
            raise InvalidTable("f, g, d must be non-empty 1-d arrays of equal length")
        if not np.all(f > 0.0):
            raise InvalidTable("recurrence coefficients f_n must be strictly positive")
        if not (np.all(d > 0.0) and np.all(np.isfinite(d))):
            raise InvalidTable("normalisation constants d_n must be positive and finite")
        if not (np.all(np.isfinite(f)) and np.all(np.isfinite(g))):
            raise InvalidTable("recurrence coefficients must be finite")
        for name, arr in (("f", f), ("g", g), ("d", d)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def __len__(self):
        return self.f.size

    @property
    def n_max(self) -> int:
        return self.f.size - 1

    def require(self, size: int) -> None:
        if size > len(self):
            raise TableTooShort(f"need {size} recurrence entries, table has {len(self)}")


def _jacobi_coefficients(mu, nu, n):
    s = mu + nu
    log_d = np.empty(n.size)
    log_d[0] = (s + 1) * np.log(2.0) + gammaln(mu + 1) + gammaln(nu + 1) - gammaln(s + 2)
    m = n[1:]
    log_d[1:] = (
        (s + 1) * np.log(2.0)
        + gammaln(m + mu + 1)
        + gammaln(m + nu + 1)
        - gammaln(m + 1)
        - np.log(2 * m + s + 1)
        - gammaln(m + s + 1)
    )
    # (n + s + 1) / (2n + s + 1) is exactly 1 at n = 0, even when s = -1
    ratio = np.ones(n.size)
    ratio[1:] = (m + s + 1) / (2 * m + s + 1)
    f = (
        4.0
        / (2 * n + s + 2)
        * np.sqrt((n + 1) * (n + mu + 1) * (n + nu + 1) * ratio / (2 * n + s + 3))
    )
    g = np.zeros(n.size)
    if mu != nu:
        g[0] = (nu - mu) / (s + 2)
        g[1:] = (nu**2 - mu**2) / ((2 * m + s) * (2 * m + s + 2))
    return f, g, np.exp(log_d)


def _gegenbauer_coefficients(lam, n):
    log_d = np.empty(n.size)
    log_d[0] = np.log(np.pi) - 2 * lam * np.log(2.0) + gammaln(2 * lam + 1) - 2 * gammaln(lam + 1)
    m = n[1:]
    log_d[1:] = (
        np.log(np.pi)
        + (1 - 2 * lam) * np.log(2.0)
        + gammaln(m + 2 * lam)
        + 2 * np.log(abs(lam))
        - gammaln(m + 1)
        - np.log(m + lam)
        - 2 * gammaln(lam + 1)
    )
    f = np.sqrt((n + 1) * (n + 2 * lam) / ((n + lam) * (n + lam + 1)))
    return f, np.zeros(n.size), np.exp(log_d)


def recurrence_table(spec: FamilySpec, n_max: int) -> RecurrenceTable:
    """Closed-form recurrence coefficients and norms for ``n = 0..n_max``."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    n = np.arange(n_max + 1, dtype=float)
    if spec.kind is Kind.JACOBI:
        f, g, d = _jacobi_coefficients(spec.mu, spec.nu, n)
    elif spec.kind is Kind.GEGENBAUER:
        f, g, d = _gegenbauer_coefficients(spec.lam, n)
    elif spec.kind is Kind.LEGENDRE:
        f = (n + 1) / np.sqrt((n + 0.5) * (n + 1.5))
        g, d = np.zeros(n.size), 2.0 / (2 * n + 1)
    elif spec.kind is Kind.CHEBYSHEV_T:
        tau = np.where(n == 0, 2.0, 1.0)
        f, g, d = np.sqrt(tau), np.zeros(n.size), 0.5 * np.pi * tau
    else:
        f, g, d = np.ones(n.size), np.zeros(n.size), np.full(n.size, 0.5 * np.pi)
    return RecurrenceTable(f, g, d)


def weight_from_gaps(spec: FamilySpec, one_minus, one_plus):
    """``w`` given ``1 - x`` and ``1 + x``; ``inf`` where an exponent is negative at a zero gap."""
    a, b = spec.exponents
    one_minus = np.asarray(one_minus, dtype=float)
    one_plus = np.asarray(one_plus, dtype=float)
    with np.errstate(divide="ignore"):
        return np.power(one_minus, a) * np.power(one_plus, b)


def _sqrt_weight(spec, one_minus, one_plus):
    a, b = spec.exponents
    with np.errstate(divide="ignore"):
        return np.power(one_minus, 0.5 * a) * np.power(one_plus, 0.5 * b)


def weight(spec: FamilySpec, x):
    """Weight function on the closed interval.

    Returns ``inf`` at an endpoint where the corresponding exponent is negative.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0) or np.any(np.isnan(x)):
        raise DomainError("weight is defined on [-1, 1] only")
    return weight_from_gaps(spec, 1.0 - x, 1.0 + x)[()]


def orthonormal_polynomials(table: RecurrenceTable, n_max: int, x) -> np.ndarray:
    """``Pbar_0..Pbar_{n_max}`` at ``x`` by forward recurrence; shape ``(n_max + 1,) + x.shape``."""
    table.require(n_max + 1)
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0 / np.sqrt(table.d[0])
    f, g = table.f, table.g
    if n_max >= 1:
        out[1] = 2.0 / f[0] * (x - g[0]) * out[0]
    for n in range(1, n_max):
        out[n + 1] = 2.0 / f[n] * ((x - g[n]) * out[n] - 0.5 * f[n - 1] * out[n - 1])
    return out


def _check_x(spec, x, one_minus, one_plus):
    if one_minus is None:
        if np.any(np.abs(x) > 1.0) or np.any(np.isnan(x)):
            raise DomainError("x must lie in [-1, 1]")
        one_minus, one_plus = 1.0 - x, 1.0 + x
    a, b = spec.exponents
    if (a < 0 and np.any(one_minus <= 0.0)) or (b < 0 and np.any(one_plus <= 0.0)):
        raise DomainError(f"{spec.label} weight is singular at the endpoint; use the open interval")
    return one_minus, one_plus


def eval_p_all(table: RecurrenceTable, spec: FamilySpec, n_max: int, x,
               one_minus=None, one_plus=None) -> np.ndarray:
    """``p_0..p_{n_max}`` at ``x``; optional exact gaps ``1 - x`` and ``1 + x``."""
    x = np.asarray(x, dtype=float)
    one_minus, one_plus = _check_x(spec, x, one_minus, one_plus)
    return orthonormal_polynomials(table, n_max, x) * _sqrt_weight(spec, one_minus, one_plus)


def eval_p(table: RecurrenceTable, spec: FamilySpec, n: int, x):
    """Eigenfunction ``p_n(x) = sqrt(w(x)) Pbar_n(x)``.

    >>> spec = make_family("legendre")
    >>> round(float(eval_p(recurrence_table(spec, 3), spec, 0, 0.3)), 10)
    0.7071067812
    """
    if n < 0:
        raise IndexError("n must be non-negative")
    return eval_p_all(table, spec, n, x)[n][()]


def _angle_geometry(theta, kind, left_gap, right_gap):
    theta = np.asarray(theta, dtype=float)
    if kind is AngleKind.COSINE:
        lo, hi = 0.0, np.pi
    else:
        lo, hi = -0.5 * np.pi, 0.5 * np.pi
    if left_gap is None:
        if np.any(theta <= lo) or np.any(theta >= hi) or np.any(np.isnan(theta)):
            raise DomainError(f"{kind.value} angle must lie in the open interval ({lo:.6g}, {hi:.6g})")
        left_gap, right_gap = theta - lo, hi - theta
    left_gap = np.asarray(left_gap, dtype=float)
    right_gap = np.asarray(right_gap, dtype=float)
    if kind is AngleKind.COSINE:
        # theta -> 0 means x = cos(theta) -> +1
        return np.cos(theta), left_gap, right_gap
    return np.sin(theta), right_gap, left_gap


def eval_angle_all(table: RecurrenceTable, spec: FamilySpec, n_max: int, theta,
                   kind: AngleKind | str, left_gap=None, right_gap=None) -> np.ndarray:
    """``c_n`` or ``s_n`` for ``n = 0..n_max``; gaps are distances to the angular interval ends."""
    kind = AngleKind(kind)
    x, gap_minus, gap_plus = _angle_geometry(theta, kind, left_gap, right_gap)
    # 1 - x = 2 sin^2(gap/2) underflows long before the gap does, so build
    # sqrt(w * jacobian) in log form from the half-angle sines
    a, b = spec.exponents
    with np.errstate(divide="ignore"):
        log_minus = np.log(2.0) + 2.0 * np.log(np.sin(0.5 * gap_minus))
        log_plus = np.log(2.0) + 2.0 * np.log(np.sin(0.5 * gap_plus))
        log_jac = np.log(np.sin(np.minimum(gap_minus, gap_plus)))
    scale = np.exp(0.5 * (a * log_minus + b * log_plus + log_jac))
    return orthonormal_polynomials(table, n_max, x) * scale


def eval_angle(table: RecurrenceTable, spec: FamilySpec, n: int, theta, kind: AngleKind | str):
    """Angular eigenfunction ``c_n(theta)`` (cosine) or ``s_n(theta)`` (sine)."""
    if n < 0:
        raise IndexError("n must be non-negative")
    return eval_angle_all(table, spec, n, theta, kind)[n][()]
