"""Cosine, sine, arccosine and arcsine distributions.

Densities are sampled on a display grid that stays a margin away from the
endpoints; moments always go through quadrature on the open interval.
"""
import numpy as np

from phaseops.distributions import classical_density, density_values, display_grid, moment
from phaseops.families import make_family, recurrence_table
from phaseops.states import coherent, coherent_report, fock

cheb_t = make_family("chebyshev-t")
tt = recurrence_table(cheb_t, 8)
theta = display_grid("arccos", 5)
print("Chebyshev T vacuum, arccos density:", np.round(density_values(tt, cheb_t, fock(0, 3), theta, "arccos"), 10))
print("classical 1/pi                    :", round(1 / np.pi, 10))

c = display_grid("cosine", 5, margin=1e-3)
print("\nChebyshev T vacuum, cosine density:", np.round(density_values(tt, cheb_t, fock(0, 3), c, "cosine"), 6))
print("classical 1/(pi sqrt(1-c^2))      :", np.round(classical_density("cosine", c).density, 6))

# Moments by quadrature reproduce the operator expectation values
spec = make_family("gegenbauer", lam=-0.25)
t = recurrence_table(spec, 48)
alpha = 1 + 1j
state, report = coherent(alpha, 40), coherent_report(t, alpha)
print(f"\nlambda=-1/4, alpha={alpha}")
print(f"  <C>   quadrature {moment(t, spec, state, 1, 'cosine'):.12f}  operator {report.mean_C:.12f}")
print(f"  <C^2> quadrature {moment(t, spec, state, 2, 'cosine'):.12f}  operator {report.mean_C2:.12f}")
print(f"  normalisation (arcsin) {moment(t, spec, state, 0, 'arcsin'):.12f}")

# Angle variances of Fock states creep towards the classical pi^2/12
print("\nFock arccos variance, lambda = 1")
s1 = make_family("gegenbauer", lam=1.0)
t1 = recurrence_table(s1, 30)
for n in (0, 1, 5, 20):
    st = fock(n, n + 3)
    mean = moment(t1, s1, st, 1, "arccos")
    print(f"  n={n:2d}: {moment(t1, s1, st, 2, 'arccos') - mean**2:.6f}   (pi^2/12 = {np.pi**2 / 12:.6f})")

# The cosine distribution cannot tell phi from -phi
x = display_grid("cosine", 201)
a = density_values(t, spec, coherent(1.2 * np.exp(0.6j), 40), x, "cosine")
b = density_values(t, spec, coherent(1.2 * np.exp(-0.6j), 40), x, "cosine")
print("\nmax |P_C(phi) - P_C(-phi)| =", np.max(np.abs(a - b)))
