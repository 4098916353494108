"""Expectation values for Fock and coherent states.

Each quantity has a closed form in the bands rho[n,n], rho[n+1,n], rho[n+2,n]
and an independent trace route through explicit matrices.
"""
import numpy as np

from phaseops.families import make_family, recurrence_table
from phaseops.states import closed_form_report, coherent, coherent_fg, coherent_report, fock, trace_report

# Fock variances: 1/4 then 1/2 for Chebyshev U, 3/4 at n=1 for Chebyshev T
for kind in ("chebyshev-u", "chebyshev-t", "legendre"):
    t = recurrence_table(make_family(kind), 10)
    var = [closed_form_report(t, fock(n, 10)).var_C for n in range(5)]
    print(f"{kind:12s} var_C(n=0..4) = {np.round(var, 6)}")

# Extended operators: for asymmetric weights the Fock means are g_n, not zero
jac = make_family("jacobi", mu=-0.5, nu=0.5)
tj = recurrence_table(jac, 10)
print("\nJacobi(-1/2, 1/2) <n|C|n> =", [round(closed_form_report(tj, fock(n, 10)).mean_C, 12) for n in range(4)])

# Coherent states: the series route and the matrix route agree
alpha = 1.0 + 1.0j
t = recurrence_table(make_family("gegenbauer", lam=-0.25), 256)
series = coherent_report(t, alpha)
matrix = trace_report(t, coherent(alpha, 40))
worst = max(abs(a - b) for a, b in zip(series.as_dict().values(), matrix.as_dict().values()))
print(f"\ncoherent alpha={alpha}: series vs trace, worst field difference {worst:.1e}")
print(f"  <C> = {series.mean_C:.6f}, <S> = {series.mean_S:.6f}, var_C = {series.var_C:.6f}")
print(f"  uncertainty C-S: {series.uncertainty_CS_lhs:.6f} >= {series.uncertainty_CS_rhs:.6f}")

# F1 carries the |alpha| dependence of the means; it tends to 1 in the classical limit
print("\nF1(|alpha|)")
for lam in (-0.25, 0.5, 1.0, 5.0):
    tl = recurrence_table(make_family("gegenbauer", lam=lam), 512)
    row = [coherent_fg(tl, a).F1 for a in (0.5, 1, 2, 5, 10)]
    print(f"  lambda={lam:5}: " + "  ".join(f"{v:.4f}" for v in row))
