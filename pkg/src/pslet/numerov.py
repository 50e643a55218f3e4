"""Direct numerical integration of the radial equation (Numerov shooting).

Independent reference for the series results.  The radial equation
``-u''/2 + [l(l+1)/(2q^2) + V] u = E u`` is integrated on a grid uniform in
``s = ln q`` after the substitution ``u = sqrt(q) phi``::

    phi''(s) = [(l + 1/2)^2 + 2 q^2 (V(q) - E)] phi(s)

which resolves both hard power-law cores near the origin and long Coulomb
tails with one grid.  Eigenvalues are located by bisection that combines the
node count of the matched solution with the sign of the log-derivative
mismatch at the outermost classical turning point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DomainError, NoEigenvalueError, ValidationError
from .potentials import PotentialModel, eval_value

DEFAULT_STEPS = 200_000
DEFAULT_TOL = 1e-11
#: decay exponent required beyond the outer turning point and inside the core
TAIL_DECAY = 40.0
#: largest span of ln q allowed below the inner turning point
MAX_CORE_SPAN = 22.0
_BIG = 1e100


@dataclass(frozen=True)
class RadialGrid:
    """Grid uniform in ``ln q``; ``h`` is the spacing in ``ln q``."""

    q_min: float
    q_max: float
    steps: int = DEFAULT_STEPS

    def __post_init__(self):
        if not (0 < self.q_min < self.q_max):
            raise ValidationError(f"need 0 < q_min < q_max, got {self.q_min}, {self.q_max}")
        if self.steps < 1000:
            raise ValidationError("grid needs at least 1000 steps")

    @property
    def h(self) -> float:
        return math.log(self.q_max / self.q_min) / self.steps

    @property
    def q(self) -> np.ndarray:
        return self.q_min * np.exp(self.h * np.arange(self.steps + 1))

    def refined(self, factor: int = 2) -> "RadialGrid":
        return RadialGrid(self.q_min, self.q_max, self.steps * factor)


@dataclass(frozen=True)
class ShootingResult:
    energy: float
    nodes: int
    iterations: int
    matching_residual: float
    grid: RadialGrid
    raw_energy: float


@njit(cache=True)
def _integrate(g, h, lo, hi, step, seed):
    """Numerov from index lo towards hi (step = +1 or -1) for phi'' = g phi.

    Returns the solution on the visited range and the number of sign changes.
    """
    n = g.shape[0]
    phi = np.zeros(n)
    c = h * h / 12.0
    phi[lo] = 1.0
    phi[lo + step] = math.exp(seed * h)
    nodes = 0
    i = lo + step
    while i != hi:
        f_prev = 1.0 - c * g[i - step]
        f_here = 1.0 - c * g[i]
        f_next = 1.0 - c * g[i + step]
        val = ((12.0 - 10.0 * f_here) * phi[i] - f_prev * phi[i - step]) / f_next
        phi[i + step] = val
        if val != 0.0 and phi[i] != 0.0 and (val < 0.0) != (phi[i] < 0.0):
            nodes += 1
        if abs(val) > _BIG:
            j = lo
            while j != i + 2 * step:
                phi[j] /= _BIG
                j += step
        i += step
    return phi, nodes


@njit(cache=True)
def _shoot(a, b, energy, h, seed_in, seed_out):
    g = a - b * energy
    n = g.shape[0]
    m = -1
    for i in range(n - 2, 0, -1):
        if g[i] < 0.0:
            m = i
            break
    if m < 0:
        m = int(np.argmin(g))
    m = max(2, min(m, n - 3))
    out, nodes_out = _integrate(g, h, 0, m + 1, 1, seed_in)
    inn, nodes_in = _integrate(g, h, n - 1, m - 1, -1, seed_out)
    # sign changes strictly beyond m on the inward branch
    nodes_in = 0
    for i in range(m, n - 1):
        if inn[i] != 0.0 and inn[i + 1] != 0.0 and (inn[i] < 0.0) != (inn[i + 1] < 0.0):
            nodes_in += 1
    nodes_out = 0
    for i in range(0, m):
        if out[i] != 0.0 and out[i + 1] != 0.0 and (out[i] < 0.0) != (out[i + 1] < 0.0):
            nodes_out += 1
    d_out = (out[m + 1] - out[m - 1]) / (2.0 * h * out[m])
    d_in = (inn[m + 1] - inn[m - 1]) / (2.0 * h * inn[m])
    return nodes_out + nodes_in, d_out - d_in, m


@njit(cache=True)
def _sturm_count(a, b, energy, h, seed_in):
    g = a - b * energy
    n = g.shape[0]
    _, nodes = _integrate(g, h, 0, n - 1, 1, seed_in)
    return nodes


def _coeffs(model: PotentialModel, l: int, grid: RadialGrid):
    q = grid.q
    a = (l + 0.5) ** 2 + 2 * q * q * eval_value(model, q)
    b = 2 * q * q
    return a, b


def _seed(a_i: float, b_i: float, energy: float) -> float:
    # local decay rate in ln q; WKB ratio for the first step
    return math.sqrt(max(a_i - b_i * energy, 0.0))


def _veff(model: PotentialModel, l: int, q):
    return l * (l + 1) / (2 * q * q) + eval_value(model, q)


def _well_bottom(model: PotentialModel, l: int) -> tuple[float, float, float]:
    """Location, depth and harmonic frequency of the effective-potential minimum."""
    from scipy.optimize import minimize_scalar

    if model.kind == "pure_coulomb":
        q_star = float(l * (l + 1)) if l > 0 else 1e-6
    else:
        s = np.linspace(math.log(1e-6), math.log(1e6), 2401)
        with np.errstate(over="ignore"):
            v = _veff(model, l, np.exp(s))
        i = int(np.argmin(np.where(np.isfinite(v), v, np.inf)))
        if i == 0:
            q_star = 1e-6
        else:
            lo, hi = s[max(i - 1, 0)], s[min(i + 1, len(s) - 1)]
            res = minimize_scalar(lambda t: _veff(model, l, math.exp(t)), bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
            q_star = math.exp(res.x)
    depth = _veff(model, l, q_star)
    if model.kind == "pure_coulomb" and l == 0:
        return q_star, -math.inf, 1.0
    eps = 1e-3 * max(q_star, 1.0)
    if q_star > eps:
        curv = (_veff(model, l, q_star + eps) - 2 * depth + _veff(model, l, q_star - eps)) / eps**2
    else:
        curv = 2 * (_veff(model, l, q_star + eps) - depth) / eps**2
    return q_star, depth, math.sqrt(max(curv, 1e-12))


def _turning_points(model: PotentialModel, l: int, energy: float, q_star: float):
    """Inner and outer classical turning points of the effective potential at ``energy``."""
    from scipy.optimize import brentq

    def f(q):
        return _veff(model, l, q) - energy

    q_star = max(q_star, 1e-9)
    hi = max(2 * q_star, 1.0)
    while f(hi) < 0:
        hi *= 2
        if hi > 1e9:
            raise NoEigenvalueError(f"no outer turning point below 1e9 at E={energy}")
    q_out = brentq(f, q_star, hi) if f(q_star) < 0 else q_star
    lo = q_star
    while f(lo) < 0 and lo > 1e-12 * q_out:
        lo /= 2
    q_in = brentq(f, lo, q_star) if f(lo) > 0 and f(q_star) < 0 else None
    return q_in, q_out


def _decay_integral(model, l, energy, q_from, q_to, n=4000):
    s = np.linspace(math.log(q_from), math.log(q_to), n)
    q = np.exp(s)
    kappa = np.sqrt(np.maximum(2 * (_veff(model, l, q) - energy), 0.0)) * q
    return np.concatenate([[0.0], np.cumsum(0.5 * (kappa[1:] + kappa[:-1]) * np.diff(s))]), q


def make_grid(model: PotentialModel, l: int, energy_top: float, steps: int = DEFAULT_STEPS) -> RadialGrid:
    """Grid reaching ``TAIL_DECAY`` decay lengths past the turning points at ``energy_top``."""
    q_star, _, _ = _well_bottom(model, l)
    q_in, q_out = _turning_points(model, l, energy_top, q_star)

    span = 1.0
    while True:
        acc, q = _decay_integral(model, l, energy_top, q_out, q_out * (1 + span))
        if acc[-1] >= TAIL_DECAY:
            q_max = float(q[np.searchsorted(acc, TAIL_DECAY)])
            break
        span *= 2
        if span > 1e6:
            raise NoEigenvalueError(f"tail of {model.label()} does not decay at E={energy_top}")

    if q_in is None:
        return RadialGrid(q_min=q_out * math.exp(-MAX_CORE_SPAN), q_max=q_max, steps=steps)
    q_start = q_in * math.exp(-MAX_CORE_SPAN)
    acc, q = _decay_integral(model, l, energy_top, q_start, q_in)
    inner = acc[-1] - acc
    idx = np.nonzero(inner <= TAIL_DECAY)[0]
    q_min = float(q[idx[0]]) if len(idx) else float(q_start)
    return RadialGrid(q_min=q_min, q_max=q_max, steps=steps)


class _Shooter:
    def __init__(self, model, l, grid):
        self.grid = grid
        self.a, self.b = _coeffs(model, l, grid)
        self.h = grid.h

    def seeds(self, energy):
        return _seed(self.a[0], self.b[0], energy), _seed(self.a[-1], self.b[-1], energy)

    def count(self, energy):
        s_in, _ = self.seeds(energy)
        return _sturm_count(self.a, self.b, energy, self.h, s_in)

    def match(self, energy):
        s_in, s_out = self.seeds(energy)
        return _shoot(self.a, self.b, energy, self.h, s_in, s_out)


def _bracket(model: PotentialModel, l: int, n_r: int, steps: int):
    """Energy window holding exactly level ``n_r`` plus a grid valid inside it."""
    q_star, depth, omega = _well_bottom(model, l)
    ceiling = model.asymptote
    if math.isinf(depth):
        # pure Coulomb s-wave: bottomless, start well below the ground state
        lo, step = -2.0, 0.5
    else:
        lo, step = depth, omega
    hi = lo + step
    for _ in range(200):
        if hi >= ceiling:
            hi = 0.5 * (lo + ceiling) if math.isfinite(ceiling) else hi
        shooter = _Shooter(model, l, make_grid(model, l, hi, steps))
        if shooter.count(hi) > n_r:
            return lo, hi, shooter
        lo, step = hi, 2 * step
        hi = lo + step
    raise NoEigenvalueError(f"could not bracket level n_r={n_r} of {model.label()}, l={l}")


def solve_bound_state(
    model: PotentialModel,
    l: int,
    n_r: int = 0,
    grid: RadialGrid | None = None,
    e_bracket: tuple[float, float] | None = None,
    tol: float = DEFAULT_TOL,
    steps: int = DEFAULT_STEPS,
) -> ShootingResult:
    """Bound-state energy of level ``(l, n_r)``.

    ``e_bracket`` and the returned energy are in the model's reporting
    convention.  Without a bracket the level is isolated by Sturm node counts
    starting at the bottom of the effective potential.
    """
    if l < 0 or n_r < 0:
        raise ValidationError("need l >= 0 and n_r >= 0")
    factor = model.factor
    if e_bracket is None:
        lo, hi, shooter = _bracket(model, l, n_r, steps)
    else:
        lo, hi = (e / factor for e in e_bracket)
        if not lo < hi:
            raise ValidationError("e_bracket must be increasing")
        shooter = _Shooter(model, l, grid or make_grid(model, l, hi, steps))
        width = hi - lo
        for _ in range(60):
            if shooter.count(lo) <= n_r:
                break
            lo -= width
        for _ in range(60):
            if shooter.count(hi) > n_r:
                break
            hi += width
        else:
            raise NoEigenvalueError(f"bracket {e_bracket} exhausted without reaching level n_r={n_r}")
    if grid is not None:
        shooter = _Shooter(model, l, grid)
    if not np.all(np.isfinite(shooter.a)):
        raise DomainError("potential is not finite on the grid")

    it = 0
    mismatch = math.nan
    nodes = -1
    while hi - lo > tol * max(1.0, abs(lo)) and it < 200:
        mid = 0.5 * (lo + hi)
        nodes, mismatch, _ = shooter.match(mid)
        if nodes > n_r or (nodes == n_r and mismatch < 0):
            hi = mid
        else:
            lo = mid
        it += 1
    energy = 0.5 * (lo + hi)
    nodes, mismatch, _ = shooter.match(energy)
    if nodes != n_r:
        raise NoEigenvalueError(f"converged to a level with {nodes} nodes, wanted {n_r}")
    return ShootingResult(
        energy=factor * energy,
        nodes=int(nodes),
        iterations=it,
        matching_residual=abs(float(mismatch)),
        grid=shooter.grid,
        raw_energy=energy,
    )


def eigenfunction(model: PotentialModel, l: int, result: ShootingResult):
    """Normalized radial function ``u(q)`` on the result's grid, positive at its peak."""
    shooter = _Shooter(model, l, result.grid)
    e = result.raw_energy
    s_in, s_out = shooter.seeds(e)
    g = shooter.a - shooter.b * e
    n = len(g)
    _, _, m = _shoot(shooter.a, shooter.b, e, shooter.h, s_in, s_out)
    out, _ = _integrate(g, shooter.h, 0, m + 1, 1, s_in)
    inn, _ = _integrate(g, shooter.h, n - 1, m - 1, -1, s_out)
    phi = np.concatenate([out[: m + 1], inn[m + 1 :] * (out[m] / inn[m])])
    q = result.grid.q
    u = np.sqrt(q) * phi
    norm = np.sqrt(np.trapezoid(u * u * q, dx=result.grid.h))
    u = u / norm
    if u[np.argmax(np.abs(u))] < 0:
        u = -u
    return q, u
