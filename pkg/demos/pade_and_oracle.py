"""
Resummation and the numerical reference
=======================================

Where the large-l series struggles (weak spikes, a < 5) the Pade tables
and the shooting solver tell different stories.  This script lays them
side by side and then reproduces a full reference table.
"""

from pslet import expand, fit_pade, solve_bound_state, spiked_ho
from pslet.pade import resummed_energy
from pslet.workbench import run_table

# weak spikes: lbar is small and the corrections stop shrinking early
for a in (1000, 10, 1, 0.05, 0.005):
    model = spiked_ho(a, 2.5, "doubled")
    state, s = expand(model, 0)
    num = solve_bound_state(model, 0).energy
    print(f"a={a:<7g} lbar={state.pt.lbar:.3f}  smallest term at n={s.smallest_term_index()}"
          f"  E_P={s.truncated(4):.6f}  E[3,4]={resummed_energy(s, 3, 4):.6f}  numerical={num:.6f}")

# the fitted rational function itself
_, s = expand(spiked_ho(1000, 5.0, "doubled"), 0)
approx = fit_pade([0.0, *s.corrections[:7]], 3, 4)
print("\n[3/4] numerator:", approx.num_coeffs)
print("[3/4] denominator:", approx.den_coeffs)
print("condition number of the Toeplitz block: %.3g" % approx.condition)

# [3,3] above and [3,4] below the numerical value on the hard-core rows
for b in (5.0, 5.5, 6.0):
    m = spiked_ho(1000, b, "doubled")
    _, s = expand(m, 0)
    lo, hi = resummed_energy(s, 3, 4), resummed_energy(s, 3, 3)
    num = solve_bound_state(m, 0).energy
    print(f"b={b}: {lo:.8f} <= {num:.8f} <= {hi:.8f} : {lo <= num <= hi}")

# reproduce table 3 and show the per-cell verdicts
print()
for res in run_table(3):
    r = res.row
    cells = ", ".join(f"{c['column']} {c['status']}" for c in res.checks)
    print(f"c={r.c:<4g} {r.state}  E_P={res.record.e_p:.8f}  numerical={res.record.oracle:.8f}  [{cells}]")
