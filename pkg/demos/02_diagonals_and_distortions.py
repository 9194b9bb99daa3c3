"""Copula diagonals and their power distortions.

The diagonal delta_n(u) is the probability that the maximum of n dependent
uniforms stays below u.  With the right rate r_n, delta_n(u^(1/r_n))
converges to a distortion function D; the sliding-max model converges to the
power u^(1/(k+1)), an Archimedean model to psi((-log u)^(1/rho)), and the
Cuadras-Auge model has a finite-rate regime where no stabilization applies.
"""

import numpy as np

from maxdep import distortion_sup_distance, make_diagonal, power_distortion

print("sliding max, k = 1: distortion approaches u^(1/2)")
mm = make_diagonal("movingmax", k=1)
for n in (4, 16, 64, 256, 1024):
    sup = distortion_sup_distance(mm, None, n, mm.limit_distortion)
    print(f"  n={n:5d}  sup |D_n - D| = {sup:.6f}")

print("\nClayton diagonal, theta = 2: distortion approaches (1 - log u)^(-1/2)")
cl = make_diagonal("archimedean", family="clayton", theta=2.0)
for n in (10, 100, 1000, 10_000):
    sup = distortion_sup_distance(cl, None, n, cl.limit_distortion)
    print(f"  n={n:5d}  rate={cl.canonical_rate(n):10.1f}  sup = {sup:.6f}")

print("\nCuadras-Auge, theta = 0.5: the rate converges to 1/theta = 2")
ca = make_diagonal("cuadras-auge", theta=0.5)
for n in (1, 5, 10, 50):
    print(f"  n={n:3d}  eta_n = {ca.canonical_rate(n):.6f}  D_n(0.5) = {power_distortion(ca, None, n, 0.5):.6f}")
print(f"  finite-rate regime: plain maxima converge to F^{ca.finite_rate_limit:.0f}")
