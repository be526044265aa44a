"""Large-degree eigenvalues: the asymptotic curve and its distance from exact roots."""

import math

from ballspectra.asymptotics import asymptotic_sweep, compare_exact_vs_asymptotic
from ballspectra.characteristic import ProblemParams

p = ProblemParams(1 + 1j, 1.0)

print("n     Re zeta_asym        Im zeta_asym        delta^2 e / (2 n^2)")
for rec in asymptotic_sweep(range(250, 351, 10), p):
    print(f"{rec.n:<5d} {rec.zeta_asym.real:.10e}  {rec.zeta_asym.imag:+.3e}       {rec.zeta_simple:.10e}")

print("\nratio to the simple law:")
for n in (100, 200, 400, 800):
    z = asymptotic_sweep([n], p)[0]
    print(f"  n = {n:<4d} |zeta_asym 2n^2/e - 1| = {abs(z.zeta_asym * 2 * n * n / math.e - 1):.3e}")

print("\nexact smallest root against the asymptotic value:")
for rec in compare_exact_vs_asymptotic(range(20, 61, 10), p):
    print(f"  n = {rec.n}: zeta_exact = {rec.zeta_exact:.6e}  rel_gap = {rec.rel_gap:.4f}  roots in the default window: {rec.root_count}")
