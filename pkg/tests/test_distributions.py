import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from phaseops.distributions import (
    DEFAULT_MARGIN,
    Variable,
    classical_density,
    classical_moment,
    density,
    density_values,
    display_grid,
    domain,
    moment,
    moment_relation_check,
    representation,
)
from phaseops.errors import DomainError, TableTooShort
from phaseops.families import eval_p, make_family, recurrence_table
from phaseops.states import coherent, coherent_report, fock, from_matrix


def family(kind, **kw):
    spec = make_family(kind, **kw)
    return spec, recurrence_table(spec, 48)


# ------------------------------------------------------------ grids

def test_domains_and_grid():
    assert domain("arccos") == (0.0, np.pi)
    assert domain(Variable.ARCSIN) == (-np.pi / 2, np.pi / 2)
    grid = display_grid("cosine", 5)
    assert grid[0] == -1 + DEFAULT_MARGIN and grid[-1] == 1 - DEFAULT_MARGIN
    assert np.all(np.diff(grid) > 0)
    assert display_grid("sine", 1)[0] == 0.0
    with pytest.raises(ValueError):
        display_grid("cosine", 0)
    with pytest.raises(ValueError):
        display_grid("cosine", 5, margin=0.0)


# ------------------------------------------------------------ representations

def test_representation_fock():
    spec, t = family("gegenbauer", lam=-0.25)
    x = np.linspace(-0.9, 0.9, 7)
    for n in range(5):
        psi = np.eye(6)[n]
        assert np.allclose(representation(t, spec, psi, x, "cosine"), eval_p(t, spec, n, x), atol=1e-15)
        assert np.allclose(representation(t, spec, psi, x, "sine"), (-1j) ** n * eval_p(t, spec, n, x),
                           atol=1e-15)


def test_representation_vacuum_chebyshev_t():
    spec, t = family("chebyshev-t")
    value = representation(t, spec, [1.0], 0.0, "cosine")
    assert isinstance(value, complex)
    assert abs(value - np.sqrt(1 / np.pi)) < 1e-15


def test_representation_domain():
    spec, t = family("legendre")
    with pytest.raises(DomainError):
        representation(t, spec, [1.0], 1.0, "cosine")
    with pytest.raises(DomainError):
        representation(t, spec, [1.0], -0.1, "arccos")


# ------------------------------------------------------------ densities

def test_fock_density_is_p_squared():
    spec, t = family("jacobi", mu=0.25, nu=-0.5)
    x = display_grid("cosine", 51)
    for n in range(6):
        p2 = eval_p(t, spec, n, x) ** 2
        state = fock(n, n + 3)
        assert np.allclose(density_values(t, spec, state, x, "cosine"), p2, rtol=1e-13, atol=1e-14)
        assert np.allclose(density_values(t, spec, state, x, "sine"), p2, rtol=1e-13, atol=1e-14)


def test_vacuum_examples():
    spec, t = family("legendre")
    x = display_grid("cosine", 21)
    assert np.allclose(density_values(t, spec, fock(0, 3), x, "cosine"), 0.5, atol=1e-15)
    spec, t = family("chebyshev-u")
    assert abs(density_values(t, spec, fock(0, 3), 0.0, "cosine")[0] - 2 / np.pi) < 1e-15
    spec, t = family("chebyshev-t")
    theta = display_grid("arccos", 21)
    assert np.allclose(density_values(t, spec, fock(0, 3), theta, "arccos"), 1 / np.pi, atol=1e-15)


def test_density_meta():
    spec, t = family("gegenbauer", lam=1.0)
    grid = density(t, spec, coherent(1j, 30), display_grid("sine", 11), "sine", DEFAULT_MARGIN)
    assert grid.variable is Variable.SINE
    assert grid.meta["family"] == "gegenbauer(lambda=1)"
    assert grid.meta["state"] == "coherent:0,1"
    assert grid.meta["margin"] == DEFAULT_MARGIN
    assert grid.points.shape == grid.density.shape


def test_density_needs_table():
    spec = make_family("legendre")
    t = recurrence_table(spec, 3)
    with pytest.raises(TableTooShort):
        density_values(t, spec, fock(5, 8), [0.0], "cosine")


def test_classical_density():
    assert abs(classical_density("cosine", [0.0]).density[0] - 1 / np.pi) < 1e-16
    assert np.all(classical_density("arcsin", [-1.0, 0.3, 1.2]).density == 1 / np.pi)
    with pytest.raises(DomainError):
        classical_density("cosine", [1.0])
    assert abs(classical_moment("cosine", 0) - 1) < 1e-10
    assert abs(classical_moment("cosine", 1)) < 1e-10
    assert abs(classical_moment("cosine", 2) - 0.5) < 1e-10
    assert abs(classical_moment("arcsin", 2) - np.pi**2 / 12) < 1e-10
    assert abs(classical_moment("arccos", 1) - np.pi / 2) < 1e-10


DIST_FAMILIES = [("legendre", {}), ("chebyshev-t", {}), ("gegenbauer", {"lam": -0.25}),
                 ("gegenbauer", {"lam": 2.0}), ("jacobi", {"mu": -0.5, "nu": 0.5}),
                 ("jacobi", {"mu": -0.9, "nu": 0.6})]


@pytest.mark.parametrize("kind, kw", DIST_FAMILIES)
def test_normalisation_and_nonnegativity(kind, kw):
    spec, t = family(kind, **kw)
    rng = np.random.default_rng(5)
    vecs = rng.normal(size=(12, 2)) + 1j * rng.normal(size=(12, 2))
    rho = np.zeros((16, 16), dtype=complex)
    rho[:12, :12] = vecs @ vecs.conj().T
    states = [fock(0, 3), fock(7, 10), coherent(1 + 1j, 40), from_matrix(rho / np.trace(rho).real)]
    for state in states:
        for variable in Variable:
            assert abs(moment(t, spec, state, 0, variable) - 1) < 1e-6
            values = density_values(t, spec, state, display_grid(variable, 301), variable)
            assert values.min() >= -1e-13


@pytest.mark.parametrize("kind, kw", DIST_FAMILIES)
def test_moments_match_operator_route(kind, kw):
    spec, t = family(kind, **kw)
    for alpha in (1 + 1j, -0.4 + 0.9j):
        state = coherent(alpha, 40)
        r = coherent_report(t, alpha)
        assert abs(moment(t, spec, state, 1, "cosine") - r.mean_C) < 1e-6
        assert abs(moment(t, spec, state, 2, "cosine") - r.mean_C2) < 1e-6
        assert abs(moment(t, spec, state, 1, "sine") - r.mean_S) < 1e-6
        assert abs(moment(t, spec, state, 2, "sine") - r.mean_S2) < 1e-6
        # angle distributions give the same cosine/sine means
        assert abs(moment(t, spec, state, np.cos, "arccos") - r.mean_C) < 1e-6
        assert abs(moment(t, spec, state, np.sin, "arcsin") - r.mean_S) < 1e-6


def test_fock_mean_is_g():
    spec, t = family("jacobi", mu=-0.5, nu=0.5)
    for n in range(4):
        assert abs(moment(t, spec, fock(n, n + 3), 1, "cosine") - t.g[n]) < 1e-8


def test_zero_count():
    for kind, kw in (("gegenbauer", {"lam": 1.0}), ("gegenbauer", {"lam": -0.25}), ("jacobi", {"mu": 0.5, "nu": -0.5})):
        spec, t = family(kind, **kw)
        x = display_grid("cosine", 10_000)
        for n in range(8):
            p = eval_p(t, spec, n, x)
            assert np.count_nonzero(np.diff(np.sign(p)) != 0) == n


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 2.0), st.floats(-np.pi, np.pi))
def test_phase_conjugation_and_quadrature_shift(r, phi):
    spec, t = family("gegenbauer", lam=-0.25)
    x = display_grid("cosine", 101)
    alpha = r * np.exp(1j * phi)
    cos_plus = density_values(t, spec, coherent(alpha, 40), x, "cosine")
    cos_minus = density_values(t, spec, coherent(np.conj(alpha), 40), x, "cosine")
    assert np.max(np.abs(cos_plus - cos_minus)) < 1e-12
    sine = density_values(t, spec, coherent(alpha, 40), x, "sine")
    turned = density_values(t, spec, coherent(alpha * np.exp(-0.5j * np.pi), 40), x, "cosine")
    assert np.max(np.abs(sine - turned)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.9, 1.5), st.floats(-0.9, 1.5), st.integers(0, 8))
def test_reflection(mu, nu, n):
    a, b = make_family("jacobi", mu=mu, nu=nu), make_family("jacobi", mu=nu, nu=mu)
    ta, tb = recurrence_table(a, 12), recurrence_table(b, 12)
    x = display_grid("cosine", 101, 1e-3)
    left = density_values(ta, a, fock(n, 12), -x, "cosine")
    right = density_values(tb, b, fock(n, 12), x, "cosine")
    assert np.all(np.abs(left - right) <= 1e-10 * np.maximum(1.0, right))


def test_angle_densities_related_by_shift():
    spec, t = family("jacobi", mu=-0.5, nu=0.25)
    theta_c = display_grid("arccos", 101, 1e-3)
    for n in range(5):
        a = density_values(t, spec, fock(n, 8), theta_c, "arccos")
        b = density_values(t, spec, fock(n, 8), np.pi / 2 - theta_c, "arcsin")
        assert np.max(np.abs(a - b)) < 1e-12


def test_chebyshev_t_classical_references():
    spec, t = family("chebyshev-t")
    vac = fock(0, 3)
    mean = moment(t, spec, vac, 1, "arccos")
    assert abs(moment(t, spec, vac, 2, "arccos") - mean**2 - np.pi**2 / 12) < 1e-8
    c = display_grid("cosine", 201)
    diff = density_values(t, spec, vac, c, "cosine") - classical_density("cosine", c).density
    assert np.max(np.abs(diff)) < 1e-10


def test_moment_relation():
    spec, t = family("jacobi", mu=-0.5, nu=0.5)
    lhs, rhs = moment_relation_check(t, spec, 0, 1)
    arcsin_mean = moment(t, spec, fock(0, 3), 1, "arcsin")
    assert abs(lhs + arcsin_mean - np.pi / 2) < 1e-8
    for k in (1, 2, 3, 4):
        lhs, rhs = moment_relation_check(t, spec, 2, k)
        assert abs(lhs - rhs) < 1e-8
    spec, t = family("gegenbauer", lam=0.7)
    lhs, rhs = moment_relation_check(t, spec, 3, 1)
    assert abs(lhs - np.pi / 2) < 1e-8 and abs(rhs - np.pi / 2) < 1e-8
    with pytest.raises(ValueError):
        moment_relation_check(t, spec, 0, 0)


def test_equal_angle_variances_for_symmetric_families():
    for lam in (-0.25, 0.5, 1.0, 3.0):
        spec, t = family("gegenbauer", lam=lam)
        for n in range(4):
            state = fock(n, n + 3)
            vc = moment(t, spec, state, 2, "arccos") - moment(t, spec, state, 1, "arccos") ** 2
            vs = moment(t, spec, state, 2, "arcsin") - moment(t, spec, state, 1, "arcsin") ** 2
            assert abs(vc - vs) < 1e-8


@pytest.mark.parametrize("lam", [-0.25, 1.0])
def test_angle_variances_approach_classical(lam):
    spec, t = family("gegenbauer", lam=lam)
    state = fock(20, 23)
    for variable in ("arccos", "arcsin"):
        mean = moment(t, spec, state, 1, variable)
        assert abs(moment(t, spec, state, 2, variable) - mean**2 - np.pi**2 / 12) < 0.05


def test_callable_moment_and_errors():
    spec, t = family("legendre")
    assert abs(moment(t, spec, fock(0, 3), lambda x: np.exp(x), "cosine") - np.sinh(1.0)) < 1e-10
    with pytest.raises(ValueError):
        moment(t, spec, fock(0, 3), -1, "cosine")
