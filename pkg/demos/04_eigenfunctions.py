"""Sample normalised eigenfunctions on a meridian slice and check their Gram matrix."""

import numpy as np

from ballspectra.characteristic import ProblemParams
from ballspectra.eigensystem import SphericalPoint, eigenfunction_value, gram_matrix, modes_from_roots
from ballspectra.rootfinder import scan_roots

p = ProblemParams(2.0, 1.0)
modes = []
for n in range(3):
    modes += modes_from_roots(scan_roots(n, p)[:2], p, all_m=True)

mode = next(m for m in modes if (m.n, m.j, m.m) == (2, 1, 1))
print(f"|v| for n=2, j=1, m=1 (rows r, columns theta), mu = {mode.mu:.5f}")
thetas = np.linspace(0.1, np.pi - 0.1, 6)
for r in np.linspace(0.2, 1.0, 5):
    row = [abs(eigenfunction_value(mode, SphericalPoint(r, t, 0.0))) for t in thetas]
    print(f"r={r:.1f} " + " ".join(f"{v:8.4f}" for v in row))

g = gram_matrix(modes)
print(f"\n{len(modes)} modes; max |diag - 1| = {np.max(np.abs(np.diag(g) - 1)):.1e}")
for a in range(len(modes)):
    for b in range(a + 1, len(modes)):
        ma, mb = modes[a], modes[b]
        if (ma.n, ma.m) == (mb.n, mb.m) and ma.m == 0:
            print(f"  <v(n={ma.n},j=1), v(n={mb.n},j=2)> = {g[a, b]:.4e}  (same n, m: not orthogonal)")
