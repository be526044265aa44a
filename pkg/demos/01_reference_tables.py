"""Reproduce the three published parameter studies and show where they differ.

Each block is scanned in the default window, the first five roots are
ranked by real part and compared with the printed four-digit values.
"""

from ballspectra.reference import TRUNCATION_TOL, reproduce_tables

results = reproduce_tables()

for name, diffs in results.items():
    print(f"\n== {name} ==")
    print(f"{'n':>2} {'k':>5} {'delta':>5} {'j':>2}  {'mu (computed)':>26}  {'mu (printed)':>20}  {'err':>8}")
    for d in diffs:
        r = d.ref
        mu = "missing" if d.mu is None else f"{d.mu.real:.6f}{d.mu.imag:+.6f}i"
        flag = "" if d.ok else "  <-"
        print(
            f"{r.n:>2} {r.k.real:>5g} {r.delta:>5g} {r.j:>2}  {mu:>26}  "
            f"{r.mu.real:.4f}{r.mu.imag:+.4f}i  {max(d.mu_err, d.zeta_err):8.1e}{flag}"
        )

ok = sum(d.ok for diffs in results.values() for d in diffs)
total = sum(len(diffs) for diffs in results.values())
print(f"\n{ok} of {total} rows agree within {TRUNCATION_TOL:g}.")
# The n=0 and n=2 blocks agree; every n=1 block does not. For the largest
# radius the computed roots are also mirrored across the real axis.
