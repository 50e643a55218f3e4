"""
Spiked harmonic oscillator, V(q) = (q^2 + a q^-b) / 2
======================================================

Walks through one solve by hand, then sweeps the spike exponent.
Energies are on the doubled scale used by the classic tables.
"""

import numpy as np

from pslet import expand, solve_bound_state, spiked_ho
from pslet.pade import resummed_energy

# a strong spike, a = 1000, with exponent b = 2.5
model = spiked_ho(1000, 2.5, convention="doubled")
state, series = expand(model, l=0)

pt = state.pt
print(f"expansion point q0 = {pt.q0:.10f}")
print(f"fluctuation frequency w = {pt.w:.10f}, shift beta = {pt.beta:.10f}")
print(f"lbar = l - beta = {pt.lbar:.10f}")

# the classical term already carries most of the energy
print("classical term:", model.factor * series.leading)

# each correction enters as E^(n) / lbar^n
for n, term in enumerate(series.terms()):
    print(f"  n={n}  E^(n) = {series.corrections[n]: .3e}   term = {model.factor * term: .3e}")

# partial sums settle quickly, then the asymptotic tail starts to grow
for k in range(len(series.corrections)):
    print(f"K={k}: {series.truncated(k):.9f}")

# Pade tables of the correction series
e33 = resummed_energy(series, 3, 3)
e34 = resummed_energy(series, 3, 4)
exact = solve_bound_state(model, 0).energy
print(f"E[3,3] = {e33:.9f}   E[3,4] = {e34:.9f}   numerical = {exact:.9f}")

# sweep the exponent: the series stays excellent while the core is hard
print("\n   b      E_P(K=4)      E[3,4]      numerical")
for b in np.arange(0.5, 6.01, 0.5):
    m = spiked_ho(1000, b, "doubled")
    _, s = expand(m, 0)
    print(f"{b:4.1f}  {s.truncated(4):12.6f}  {resummed_energy(s, 3, 4):12.6f}  {solve_bound_state(m, 0).energy:12.6f}")

# b = 2 is exactly solvable: the spike just shifts the centrifugal term,
# l(l+1) + a = l'(l'+1), leaving a pure oscillator with l -> l'
a = 1000
l_eff = -0.5 + np.sqrt(0.25 + a)
print("\nb = 2 exact:", 2 * (l_eff + 1.5))
