"""Polynomial families, their recurrence tables and eigenfunctions.

Every family on [-1, 1] used here is fixed by two sequences f_n, g_n. They
define the orthonormal recurrence and, later, every operator matrix.
"""
import numpy as np

from phaseops.families import eval_angle_all, eval_p_all, make_family, recurrence_table
from phaseops.verification import gram_matrix

# The five kinds. Gegenbauer lambda = 0 is not allowed; Chebyshev T is its limit.
specs = [
    make_family("legendre"),
    make_family("chebyshev-t"),
    make_family("chebyshev-u"),
    make_family("gegenbauer", lam=-0.25),
    make_family("jacobi", mu=-0.5, nu=0.5),
]

print("first recurrence coefficients")
for spec in specs:
    t = recurrence_table(spec, 3)
    print(f"  {spec.label:28s} f = {np.round(t.f, 6)}  g = {np.round(t.g, 6)}")

# Asymmetric weights give a non-zero diagonal g_n. For mu=-1/2, nu=1/2 only g_0 survives.

# Orthonormality is checked by tanh-sinh quadrature, which never looks at the
# recurrence, so it can arbitrate. Singular endpoint weights need exact gaps
# 1 - x and 1 + x, which the quadrature hands to the integrand.
print("\nmax |<p_n|p_m> - delta_nm| for n, m <= 20")
for spec in specs:
    err = np.max(np.abs(gram_matrix(spec, 20) - np.eye(21)))
    print(f"  {spec.label:28s} {err:.1e}")

# For Chebyshev U the angle eigenfunctions are the sine states sqrt(2/pi) sin((n+1) theta).
u = make_family("chebyshev-u")
theta = np.linspace(0.1, np.pi - 0.1, 7)
c = eval_angle_all(recurrence_table(u, 4), u, 4, theta, "cosine")
print("\nChebyshev U: c_3(theta) vs sqrt(2/pi) sin(4 theta)")
print("  ", np.round(c[3], 8))
print("  ", np.round(np.sqrt(2 / np.pi) * np.sin(4 * theta), 8))

# p_n(x) near a singular endpoint stays finite in floating point as long as the gap is exact
g = make_family("gegenbauer", lam=-0.25)
tg = recurrence_table(g, 2)
for gap in (1e-6, 1e-12, 1e-200):
    p0 = eval_p_all(tg, g, 0, np.array([1.0 - gap]), np.array([gap]), np.array([2.0 - gap]))[0, 0]
    print(f"  p_0 at 1 - {gap:g}: {p0:.6e}")
