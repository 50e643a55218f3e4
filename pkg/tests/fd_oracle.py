"""Finite-difference eigenvalues, independent of the shooting solver.

With ``s = ln q`` and ``u = sqrt(q) phi`` the radial equation becomes the
symmetric-definite pencil ``-phi'' + [(l+1/2)^2 + 2 q^2 V] phi = E (2 q^2) phi``.
Three-point differences and a diagonal similarity give a symmetric tridiagonal
matrix; two grids are Richardson-extrapolated (error O(h^2)).
"""

import numpy as np
from scipy.linalg import eigh_tridiagonal

from pslet.potentials import eval_value


def _level(model, l, q_min, q_max, n, index):
    s = np.linspace(np.log(q_min), np.log(q_max), n + 2)[1:-1]
    h = s[1] - s[0]
    q = np.exp(s)
    diag = 2.0 / h**2 + (l + 0.5) ** 2 + 2 * q * q * eval_value(model, q)
    w = 1.0 / (np.sqrt(2.0) * q)
    d = diag * w * w
    e = -(1.0 / h**2) * w[:-1] * w[1:]
    vals = eigh_tridiagonal(d, e, eigvals_only=True, select="i", select_range=(index, index), tol=1e-13)
    return vals[0]


def fd_energy(model, l, q_min, q_max, n=40_000, n_r=0):
    """Richardson-extrapolated eigenvalue in the model's reporting convention."""
    coarse = _level(model, l, q_min, q_max, n, n_r)
    fine = _level(model, l, q_min, q_max, 2 * n + 1, n_r)
    return model.factor * (fine + (fine - coarse) / 3.0)
