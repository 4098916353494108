"""Truncated cosine and sine operators and what survives truncation.

C is a real tridiagonal (Jacobi) matrix, S the same matrix rotated by
diag(i^n). Their eigenvalues are Gauss nodes of the family.
"""
import numpy as np

from phaseops.families import make_family, recurrence_table
from phaseops.operators import (
    arccos_op,
    arccos_series,
    arcsin_op,
    build_cosine,
    build_sine,
    commutator,
    eigendecompose,
    matrix_function,
    number_op,
    shift_ops,
    unitary_exp,
)

leg = make_family("legendre")
t = recurrence_table(leg, 64)

C5 = build_cosine(t, 5)
print("Legendre C, N=5 eigenvalues:", np.round(eigendecompose(C5).values, 12))
print("numpy Gauss-Legendre nodes: ", np.round(np.polynomial.legendre.leggauss(5)[0], 12))

# Identities that hold exactly even after truncation
N = 16
C, S, Nop = build_cosine(t, N), build_sine(t, N), number_op(N)
E, Edag, E0 = shift_ops(t, N)
print("\n|(E + E^dag)/2 + E0 - C|      :", np.max(np.abs(((E + Edag) * 0.5 + E0 - C).entries)))
print("|[N, C] + i (S - E0)|         :", np.max(np.abs((commutator(Nop, C) + 1j * (S - E0)).entries)))

# C^2 + S^2 is not the identity, not even away from the truncation edge
u = recurrence_table(make_family("chebyshev-u"), N)
Cu, Su = build_cosine(u, N), build_sine(u, N)
block = ((Cu @ Cu) + (Su @ Su)).entries[: N - 2, : N - 2]
print("\nChebyshev U, diag of C^2 + S^2 (interior):", np.round(np.diag(block).real, 3))

# Inverse trigonometric operators by spectral decomposition, series as a cross-check
theta_c = arccos_op(C)
print("\n|cos(arccos C) - C| :", np.max(np.abs(matrix_function(theta_c, np.cos).entries - C.entries)))
for K in (10, 50, 200):
    res = arccos_series(Cu, K)
    diff = np.max(np.abs(res.operator.entries - arccos_op(Cu).entries))
    print(f"arccos series K={K:3d}: diff from spectral {diff:.2e}, last term {res.residual:.2e}")

# Two unitaries whose sum reproduces the pure shift C + iS
Uc, Us = unitary_exp(theta_c).entries, unitary_exp(arcsin_op(S)).entries
shift = 0.5 * (Uc + Us + Uc.conj().T - Us.conj().T)
print("|(Uc + Us + Uc^dag - Us^dag)/2 - (C + iS)| :", np.max(np.abs(shift - (C.entries + 1j * S.entries))))
