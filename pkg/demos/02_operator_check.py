"""Check characteristic-function modes against the volume operator itself.

The channel operator is discretised directly (no characteristic equation
involved). Its dominant eigenvalue from power iteration is compared with
the eigenvalue predicted by the first characteristic root, and with the
root of the transmission condition for the same channel.
"""

from ballspectra.characteristic import ProblemParams
from ballspectra.eigensystem import make_mode
from ballspectra.oracle import dominant_eigenvalue_power_iteration, eigenpair_residual, transmission_roots
from ballspectra.rootfinder import scan_roots

p = ProblemParams(2.0, 1.0)

for n in (0, 1, 2):
    power = dominant_eigenvalue_power_iteration(n, p)
    char_root = scan_roots(n, p)[0]
    char_mode = make_mode(n, 1, 0, char_root.mu, p)
    tr_root = transmission_roots(n, p)[0]
    tr_mode = make_mode(n, 1, 0, tr_root.mu, p)
    print(f"n = {n}")
    print(f"  power iteration       zeta = {power.value:.8f}  ({power.iterations} iterations)")
    print(f"  characteristic root   zeta = {char_mode.zeta:.8f}  residual {eigenpair_residual(char_mode):.2e}")
    print(f"  transmission root     zeta = {tr_mode.zeta:.8f}  residual {eigenpair_residual(tr_mode):.2e}")
