"""
Truncated Coulomb potential, V(q) = -1 / sqrt(q^2 + c^2)
========================================================

The softening radius c plays the role of a laser-dressing parameter.
Small c and low l are the hard cases for a large-l expansion.
"""

import numpy as np

from pslet import eigenfunction, expand, solve_bound_state, truncated_coulomb
from pslet.riccati import wavefunction
from pslet.workbench import state_label

for c in (1, 5, 10, 50):
    model = truncated_coulomb(c)
    print(f"c = {c}")
    for l in range(4):
        _, s = expand(model, l)
        e_num = solve_bound_state(model, l).energy
        print(f"  {state_label(l)}  E_P = {s.truncated(4): .8f}   numerical = {e_num: .8f}   diff = {s.truncated(4) - e_num: .1e}")

# the deviation shrinks roughly like a power of 1/lbar
model = truncated_coulomb(5)
for l in range(6):
    state, s = expand(model, l)
    err = abs(s.truncated(4) - solve_bound_state(model, l).energy)
    print(f"l={l}  lbar={state.pt.lbar:.3f}  |E_P - E_num| = {err:.2e}")

# wavefunction: the series gives exp(U(x)) about q0; compare shapes with
# the numerical eigenfunction near the expansion point
state, _ = expand(model, 1)
res = solve_bound_state(model, 1)
q, u = eigenfunction(model, 1, res)
near = np.abs(q - state.pt.q0) < 0.5 * state.pt.q0
psi = wavefunction(state, q[near], order=4)
ratio = (psi / psi.max()) / (u[near] / u[near].max())
print("2p shape ratio over |q - q0| < q0/2: min %.4f  max %.4f" % (ratio.min(), ratio.max()))

# energies rise monotonically with c: the well gets shallower
cs = np.linspace(20, 60, 5)
print("c:", cs)
print("E_P:", [round(float(expand(truncated_coulomb(c), 0)[1].truncated(4)), 8) for c in cs])
