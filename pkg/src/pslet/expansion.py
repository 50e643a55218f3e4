"""Expansion point, harmonic frequency and shift of the 1/lbar series.

For a state (l, n_r) the expansion point q0 is the root of::

    sqrt(q0**3 V'(q0)) = l - beta(q0),   beta = -(1/2 + (n_r + 1/2) w),
    w = sqrt(3 + q0 V''(q0) / V'(q0))

which places q0 at the minimum of the classical energy
``lbar**2 / (2 q0**2) + V(q0)`` and makes the 1/lbar**-1 correction vanish.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoBoundStateError, NoHarmonicMinimumError, ValidationError
from .potentials import PotentialModel, TaylorJet, eval_value, taylor_jet

logger = logging.getLogger(__name__)

#: bisection runs to the last representable bit at the default tolerance; high
#: orders amplify any error in q0 roughly tenfold per order
DEFAULT_TOL = 1e-16
N_SCAN_PANELS = 64
BRACKET_CAP = 1e6


@dataclass(frozen=True)
class ExpansionPoint:
    q0: float
    w: float
    beta: float
    lbar: float
    bigQ: float
    l: int
    n_r: int
    e_minus2: float

    @property
    def e_minus1(self) -> float:
        """Coefficient of lbar**1 in the energy; zero by construction of beta."""
        return ((2 * self.beta + 1) / 2 + (self.n_r + 0.5) * self.w) / self.q0**2

    @property
    def classical_energy(self) -> float:
        """``lbar**2 * e_minus2``: circular orbit of radius q0 at angular momentum lbar."""
        return self.lbar**2 * self.e_minus2


def frequency_w(jet: TaylorJet) -> float:
    """Harmonic frequency ``sqrt(3 + q0 V''/V')`` from a jet of order >= 2."""
    d1 = jet.coeffs[1]
    d2 = 2.0 * jet.coeffs[2]
    if d1 == 0:
        raise NoHarmonicMinimumError(f"V'(q0) vanishes at q0={jet.point}")
    radicand = 3.0 + jet.point * d2 / d1
    if not radicand > 0:
        raise NoHarmonicMinimumError(f"3 + q0 V''/V' = {radicand:.6g} <= 0 at q0={jet.point}")
    return math.sqrt(radicand)


def _shift(w: float, n_r: int) -> float:
    return -(0.5 + (n_r + 0.5) * w)


def _residual(model: PotentialModel, q: float, l: int, n_r: int) -> float:
    jet = taylor_jet(model, q, 2)
    d1 = jet.coeffs[1]
    if d1 <= 0:
        return -math.inf
    w = frequency_w(jet)
    return math.sqrt(q**3 * d1) - l + _shift(w, n_r)


def _bisect(f, lo: float, hi: float, flo: float, rtol: float) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rtol * mid or not lo < mid < hi:
            break
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _lower_edge(model: PotentialModel) -> float:
    floor = model.q_floor
    if floor > 0:
        return floor * (1 + 1e-9)
    return 1e-8


def solve_q0(model: PotentialModel, l: int, n_r: int = 0, tol: float = DEFAULT_TOL) -> ExpansionPoint:
    """Solve for the expansion point of state ``(l, n_r)``.

    Brackets are searched on a log grid between the lower edge of the
    admissible domain and an upper bound grown by doubling; every root is
    polished by bisection and, if several exist, the one with the smallest
    classical energy is kept.
    """
    if l < 0 or n_r < 0:
        raise ValidationError(f"need l >= 0 and n_r >= 0, got l={l}, n_r={n_r}")
    if not tol > 0:
        raise ValidationError("tol must be positive")

    def f(q):
        return _residual(model, q, l, n_r)

    lo = _lower_edge(model)
    hi = max(2.0 * lo, 1.0)
    while f(hi) <= 0:
        hi *= 2.0
        if hi > BRACKET_CAP:
            raise NoBoundStateError(f"no root of the expansion-point equation below {BRACKET_CAP:g} for {model.label()}")

    grid = np.geomspace(lo, hi, N_SCAN_PANELS + 1)
    values = [f(q) for q in grid]
    roots = []
    for i in range(N_SCAN_PANELS):
        if (values[i] < 0) != (values[i + 1] < 0):
            roots.append(_bisect(f, grid[i], grid[i + 1], values[i], tol))
    if not roots:
        raise NoBoundStateError(f"no sign change of the expansion-point equation for {model.label()}")

    candidates = [_build_point(model, q, l, n_r) for q in roots]
    best = min(candidates, key=lambda p: p.classical_energy)
    if len(candidates) > 1:
        rejected = [p.q0 for p in candidates if p is not best]
        logger.warning("several expansion points for %s, l=%d; kept q0=%.12g, rejected %s", model.label(), l, best.q0, rejected)
    return best


def _build_point(model: PotentialModel, q0: float, l: int, n_r: int) -> ExpansionPoint:
    jet = taylor_jet(model, q0, 2)
    w = frequency_w(jet)
    beta = _shift(w, n_r)
    lbar = l - beta
    bigQ = lbar * lbar
    e_minus2 = 1.0 / (2 * q0 * q0) + eval_value(model, q0) / bigQ
    return ExpansionPoint(q0=q0, w=w, beta=beta, lbar=lbar, bigQ=bigQ, l=l, n_r=n_r, e_minus2=e_minus2)


def leading_energy(pt: ExpansionPoint, model: PotentialModel) -> float:
    """Classical term ``lbar**2 E^(-2) = lbar**2 / (2 q0**2) + V(q0)`` (half convention)."""
    return pt.lbar**2 / (2 * pt.q0**2) + eval_value(model, pt.q0) * pt.lbar**2 / pt.bigQ
