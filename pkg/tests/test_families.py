import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_gegenbauer, eval_jacobi, gammaln

from phaseops.errors import (
    DomainError,
    GegenbauerLambdaZero,
    InvalidTable,
    ParameterOutOfRange,
    TableTooShort,
)
from phaseops.families import (
    AngleKind,
    Kind,
    RecurrenceTable,
    eval_angle,
    eval_angle_all,
    eval_p,
    eval_p_all,
    make_family,
    recurrence_table,
    weight,
)
from phaseops.quadrature import integrate, weight_moment
from phaseops.verification import gram_matrix

SQRT_2_OVER_PI = np.sqrt(2.0 / np.pi)


# ------------------------------------------------------------ specs

def test_make_family_examples():
    spec = make_family("gegenbauer", lam=1)
    assert spec.symmetric and spec.exponents == (0.5, 0.5)
    assert make_family("jacobi", mu=0, nu=0).symmetric
    assert not make_family("jacobi", mu=-0.5, nu=0.5).symmetric
    assert make_family(Kind.CHEBYSHEV_T).label == "chebyshev-t"


@pytest.mark.parametrize("kind, kw, error", [
    ("jacobi", {"mu": -1.5, "nu": 0}, ParameterOutOfRange),
    ("jacobi", {"mu": 0, "nu": -1.0}, ParameterOutOfRange),
    ("jacobi", {"mu": 0}, ParameterOutOfRange),
    ("gegenbauer", {"lam": -0.5}, ParameterOutOfRange),
    ("gegenbauer", {}, ParameterOutOfRange),
    ("gegenbauer", {"lam": 0.0}, GegenbauerLambdaZero),
    ("legendre", {"lam": 1.0}, ParameterOutOfRange),
])
def test_make_family_rejects(kind, kw, error):
    with pytest.raises(error):
        make_family(kind, **kw)


def test_lambda_zero_is_a_parameter_error():
    assert issubclass(GegenbauerLambdaZero, ParameterOutOfRange)


def test_unknown_kind():
    with pytest.raises(ValueError):
        make_family("hermite")


# ------------------------------------------------------------ tables

def test_chebyshev_u_table():
    t = recurrence_table(make_family("chebyshev-u"), 5)
    assert np.array_equal(t.f, np.ones(6))
    assert np.array_equal(t.g, np.zeros(6))
    assert np.allclose(t.d, np.pi / 2, rtol=0, atol=1e-15)


def test_chebyshev_t_table():
    t = recurrence_table(make_family("chebyshev-t"), 2)
    assert np.allclose(t.f, [np.sqrt(2.0), 1.0, 1.0], rtol=0, atol=1e-15)
    assert np.allclose(t.d, [np.pi, np.pi / 2, np.pi / 2], rtol=0, atol=1e-15)


def test_legendre_f0():
    t = recurrence_table(make_family("legendre"), 3)
    # frozen from the closed form at n = 0: 1 / sqrt(3/4)
    assert abs(t.f[0] - 1.1547005383792517) < 1e-15
    # cross-check: f_0 / 2 = <x p_0 p_1> = d_1/d_0 ratio route
    assert abs(t.f[0] - 2.0 / np.sqrt(3.0)) < 1e-15


def test_jacobi_half_table():
    t = recurrence_table(make_family("jacobi", mu=-0.5, nu=0.5), 6)
    assert t.g[0] == 0.5
    assert np.all(t.g[1:] == 0.0)
    assert abs(t.d[0] - np.pi) < 1e-14


def test_jacobi_g0_by_quadrature():
    spec = make_family("jacobi", mu=-0.5, nu=0.5)
    t = recurrence_table(spec, 2)
    # g_0 = int x p_0^2 dx = mu_1 / mu_0
    assert abs(weight_moment(spec, 1) / weight_moment(spec, 0) - t.g[0]) < 1e-10


def test_symmetric_tables_have_zero_g(spec):
    t = recurrence_table(spec, 40)
    if spec.symmetric:
        assert np.all(t.g == 0.0)
    assert np.all(t.f > 0) and np.all(t.d > 0) and np.all(np.isfinite(t.d))


def test_jacobi_equal_parameters_match_gegenbauer():
    # Jacobi (a, a) is Gegenbauer lambda = a + 1/2 up to normalisation; f, g agree
    tj = recurrence_table(make_family("jacobi", mu=0.3, nu=0.3), 20)
    tg = recurrence_table(make_family("gegenbauer", lam=0.8), 20)
    assert np.allclose(tj.f, tg.f, rtol=1e-14, atol=0)
    tl = recurrence_table(make_family("legendre"), 20)
    t0 = recurrence_table(make_family("jacobi", mu=0, nu=0), 20)
    assert np.allclose(t0.f, tl.f, rtol=1e-14) and np.allclose(t0.d, tl.d, rtol=1e-14)


def test_norms_against_scipy_polynomials():
    # d_n = int w P_n^2 with the conventional normalisation, via scipy's evaluators
    for spec, conventional in [
        (make_family("jacobi", mu=0.25, nu=0.5), lambda n, x: eval_jacobi(n, 0.25, 0.5, x)),
        (make_family("gegenbauer", lam=2.0), lambda n, x: eval_gegenbauer(n, 2.0, x)),
        (make_family("gegenbauer", lam=-0.25), lambda n, x: eval_gegenbauer(n, -0.25, x)),
    ]:
        t = recurrence_table(spec, 8)
        a, b = spec.exponents
        for n in range(9):
            val = integrate(lambda x, l, r: r**a * l**b * conventional(n, x) ** 2,
                            -1.0, 1.0, 1e-12, gaps=True).value
            assert abs(val - t.d[n]) <= 1e-9 * t.d[n]


def test_large_n_norms_do_not_overflow():
    t = recurrence_table(make_family("jacobi", mu=3.5, nu=7.25), 400)
    assert np.all(np.isfinite(t.d)) and np.all(t.d > 0)
    # closed form for n = 400 evaluated independently in log space
    mu, nu, n = 3.5, 7.25, 400
    log_d = ((mu + nu + 1) * np.log(2) + gammaln(n + mu + 1) + gammaln(n + nu + 1)
             - gammaln(n + 1) - np.log(2 * n + mu + nu + 1) - gammaln(n + mu + nu + 1))
    assert abs(np.log(t.d[-1]) - log_d) < 1e-12


def test_table_validation():
    with pytest.raises(InvalidTable):
        RecurrenceTable([1.0, 0.0], [0.0, 0.0])
    with pytest.raises(InvalidTable):
        # alternating sqrt(2), 0 pattern violates f_n > 0
        RecurrenceTable([np.sqrt(2), 0.0, np.sqrt(2), 0.0], np.zeros(4))
    with pytest.raises(InvalidTable):
        RecurrenceTable([1.0], [0.0], [-1.0])
    with pytest.raises(InvalidTable):
        RecurrenceTable([1.0, np.nan], [0.0, 0.0])
    with pytest.raises(InvalidTable):
        RecurrenceTable([1.0, 1.0], [0.0])
    t = RecurrenceTable([1.0, 1.0], [0.0, 0.1])
    assert len(t) == 2 and t.n_max == 1
    with pytest.raises(TableTooShort):
        t.require(3)
    with pytest.raises(ValueError):
        t.f[0] = 2.0


def test_recurrence_table_negative_n():
    with pytest.raises(ValueError):
        recurrence_table(make_family("legendre"), -1)


# ------------------------------------------------------------ weights

def test_weights():
    assert weight(make_family("chebyshev-u"), 0.0) == 1.0
    assert weight(make_family("chebyshev-t"), 0.0) == 1.0
    jac = make_family("jacobi", mu=-0.5, nu=0.5)
    assert weight(jac, 1.0) == np.inf
    near = weight(jac, 1 - 1e-8)
    assert abs(near - np.sqrt(2 - 1e-8) / np.sqrt(1e-8)) < 1e-6 * near
    assert weight(jac, -1.0) == 0.0
    with pytest.raises(DomainError):
        weight(jac, 1.5)


# ------------------------------------------------------------ eigenfunctions

def test_eval_p_examples():
    u = make_family("chebyshev-u")
    tu = recurrence_table(u, 10)
    assert abs(eval_p(tu, u, 0, 0.0) - SQRT_2_OVER_PI) < 1e-15
    leg = make_family("legendre")
    assert abs(eval_p(recurrence_table(leg, 2), leg, 0, 0.3) - np.sqrt(0.5)) < 1e-15
    for n in (1, 3, 5, 7):
        assert abs(eval_p(tu, u, n, 0.0)) < 1e-15


def test_eval_p_errors():
    leg = make_family("legendre")
    t = recurrence_table(leg, 3)
    with pytest.raises(IndexError):
        eval_p(t, leg, 4, 0.0)
    with pytest.raises(IndexError):
        eval_p(t, leg, -1, 0.0)
    with pytest.raises(DomainError):
        eval_p(t, leg, 0, 1.2)
    ct = make_family("chebyshev-t")
    with pytest.raises(DomainError):
        eval_p(recurrence_table(ct, 3), ct, 0, 1.0)
    # endpoint is fine when the weight is bounded there
    assert eval_p(t, leg, 0, 1.0) == pytest.approx(np.sqrt(0.5))


def test_eval_p_matches_scipy_polynomials():
    spec = make_family("jacobi", mu=0.25, nu=0.5)
    t = recurrence_table(spec, 12)
    x = np.linspace(-0.95, 0.95, 37)
    w = (1 - x) ** 0.25 * (1 + x) ** 0.5
    for n in range(13):
        expected = np.sqrt(w / t.d[n]) * eval_jacobi(n, 0.25, 0.5, x)
        assert np.max(np.abs(eval_p(t, spec, n, x) - expected)) < 1e-12


def test_orthonormality(spec):
    assert np.max(np.abs(gram_matrix(spec, 20, 1e-10) - np.eye(21))) < 1e-8


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["legendre", "chebyshev-t", "chebyshev-u", "g-0.25", "g2", "j-0.5,0.5", "j0.25,0.5"]))
def test_recurrence_residual(name):
    spec = {
        "g-0.25": make_family("gegenbauer", lam=-0.25),
        "g2": make_family("gegenbauer", lam=2.0),
        "j-0.5,0.5": make_family("jacobi", mu=-0.5, nu=0.5),
        "j0.25,0.5": make_family("jacobi", mu=0.25, nu=0.5),
    }.get(name) or make_family(name)
    t = recurrence_table(spec, 32)
    rng = np.random.default_rng(7)
    x = rng.uniform(-0.999, 0.999, 1000)
    p = eval_p_all(t, spec, 31, x)
    f, g = t.f, t.g
    for n in range(31):
        prev = 0.5 * f[n - 1] * p[n - 1] if n else 0.0
        resid = x * p[n] - 0.5 * f[n] * p[n + 1] - prev - g[n] * p[n]
        assert np.all(np.abs(resid) <= 1e-12 * np.maximum(1.0, np.abs(p[n])))


def test_reproducing_kernel():
    # int K_N(x, y) q(y) sqrt(w(y)) dy = q(x) sqrt(w(x)) for deg q < N
    spec = make_family("gegenbauer", lam=-0.25)
    N = 8
    t = recurrence_table(spec, N)
    q = np.polynomial.Polynomial([0.3, -1.0, 0.5, 2.0, 0.0, -0.7])
    a, b = spec.exponents
    for x0 in (-0.8, -0.1, 0.45, 0.9):
        px = eval_p_all(t, spec, N - 1, np.array([x0]))[:, 0]

        def integrand(y, l, r):
            py = eval_p_all(t, spec, N - 1, y, r, l)
            return (px @ py) * q(y) * np.sqrt(r**a * l**b)

        lhs = integrate(integrand, -1.0, 1.0, 1e-12, gaps=True).value
        rhs = q(x0) * np.sqrt(weight(spec, x0))
        assert abs(lhs - rhs) < 1e-8


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.99, 0.99), st.floats(0.05, 3.0))
def test_parity_symmetric(x, lam):
    spec = make_family("gegenbauer", lam=lam)
    t = recurrence_table(spec, 15)
    p_plus = eval_p_all(t, spec, 15, np.array([x]))[:, 0]
    p_minus = eval_p_all(t, spec, 15, np.array([-x]))[:, 0]
    sign = (-1.0) ** np.arange(16)
    assert np.all(np.abs(p_minus - sign * p_plus) <= 1e-13 * np.maximum(1.0, np.abs(p_plus)))


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.99, 0.99), st.floats(-0.9, 2.0), st.floats(-0.9, 2.0))
def test_parity_jacobi(x, mu, nu):
    a, b = make_family("jacobi", mu=mu, nu=nu), make_family("jacobi", mu=nu, nu=mu)
    pa = eval_p_all(recurrence_table(a, 15), a, 15, np.array([-x]))[:, 0]
    pb = eval_p_all(recurrence_table(b, 15), b, 15, np.array([x]))[:, 0]
    sign = (-1.0) ** np.arange(16)
    assert np.all(np.abs(pa - sign * pb) <= 1e-12 * np.maximum(1.0, np.abs(pb)))


def test_angle_examples():
    u = make_family("chebyshev-u")
    t = recurrence_table(u, 10)
    assert abs(eval_angle(t, u, 0, np.pi / 2, AngleKind.COSINE) - SQRT_2_OVER_PI) < 1e-15
    assert abs(eval_angle(t, u, 2, np.pi / 3, "cosine")) < 1e-15
    with pytest.raises(DomainError):
        eval_angle(t, u, 0, 0.0, "cosine")
    with pytest.raises(DomainError):
        eval_angle(t, u, 0, np.pi / 2, "sine")


def test_susskind_glogower_reduction():
    u = make_family("chebyshev-u")
    t = recurrence_table(u, 10)
    theta = np.linspace(0.01, np.pi - 0.01, 500)
    c = eval_angle_all(t, u, 10, theta, "cosine")
    n = np.arange(11)[:, None]
    assert np.max(np.abs(c - SQRT_2_OVER_PI * np.sin((n + 1) * theta))) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(0.001, np.pi - 0.001))
def test_angular_shift(theta_c):
    spec = make_family("jacobi", mu=-0.5, nu=0.25)
    t = recurrence_table(spec, 10)
    c = eval_angle_all(t, spec, 10, np.array([theta_c]), "cosine")
    s = eval_angle_all(t, spec, 10, np.array([np.pi / 2 - theta_c]), "sine")
    assert np.allclose(c, s, rtol=1e-12, atol=1e-12)


def test_angle_orthonormality(spec):
    t = recurrence_table(spec, 20)
    for kind, lo, hi in (("cosine", 0.0, np.pi), ("sine", -np.pi / 2, np.pi / 2)):
        def integrand(theta, left, right):
            c = eval_angle_all(t, spec, 20, theta, kind, left, right)
            return (c[:, None, :] * c[None, :, :]).reshape(-1, theta.size)

        gram = integrate(integrand, lo, hi, 1e-10, gaps=True).value.reshape(21, 21)
        assert np.max(np.abs(gram - np.eye(21))) < 1e-8
