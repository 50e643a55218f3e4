"""Radial potential families and their Taylor jets.

Four families are supported::

    spiked_ho          V(q) = (q**2 + a * q**-b) / 2
    truncated_coulomb  V(q) = -(q**2 + c**2) ** -0.5
    pure_ho            V(q) = q**2 / 2                 (spiked_ho with a = 0)
    pure_coulomb       V(q) = -1 / q                   (truncated_coulomb with c = 0)

Jets are stored as scaled Taylor coefficients ``t[n] = V^(n)(q0) / n!`` so that
high orders never build a factorial.

The ``convention`` flag only affects reported energies. ``"half"`` keeps the
Hamiltonian ``-1/2 d^2/dq^2 + l(l+1)/(2 q^2) + V``; ``"doubled"`` multiplies the
final energy by two, which is the scale the classic spiked-oscillator tables
are quoted in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, DomainError, ValidationError

KINDS = ("spiked_ho", "truncated_coulomb", "pure_ho", "pure_coulomb")
CONVENTIONS = {"half": 1.0, "doubled": 2.0}

#: default upper bound on the jet order
MAX_JET_ORDER = 64


@dataclass(frozen=True)
class PotentialModel:
    kind: str
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    convention: str = "half"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown potential kind {self.kind!r}")
        if self.convention not in CONVENTIONS:
            raise ValidationError(f"unknown convention {self.convention!r}")
        if self.kind == "spiked_ho":
            if not (self.a > 0 and self.b > 0):
                raise ValidationError(f"spiked_ho needs a > 0 and b > 0, got a={self.a}, b={self.b}")
        elif self.kind == "truncated_coulomb":
            if not self.c > 0:
                raise ValidationError(f"truncated_coulomb needs c > 0, got c={self.c}")

    @property
    def factor(self) -> float:
        """Multiplier applied to reported energies."""
        return CONVENTIONS[self.convention]

    @property
    def q_floor(self) -> float:
        """Lower edge of the region where V'(q) > 0."""
        if self.kind == "spiked_ho":
            return (self.a * self.b / 2.0) ** (1.0 / (self.b + 2.0))
        return 0.0

    @property
    def asymptote(self) -> float:
        """lim V(q) for q -> infinity (``inf`` for confining wells)."""
        if self.kind in ("spiked_ho", "pure_ho"):
            return math.inf
        return 0.0

    def label(self) -> str:
        if self.kind == "spiked_ho":
            return f"spiked_ho(a={self.a:g}, b={self.b:g})"
        if self.kind == "truncated_coulomb":
            return f"truncated_coulomb(c={self.c:g})"
        return self.kind


def spiked_ho(a: float, b: float, convention: str = "half") -> PotentialModel:
    return PotentialModel("spiked_ho", a=a, b=b, convention=convention)


def truncated_coulomb(c: float, convention: str = "half") -> PotentialModel:
    return PotentialModel("truncated_coulomb", c=c, convention=convention)


def pure_ho(convention: str = "half") -> PotentialModel:
    return PotentialModel("pure_ho", convention=convention)


def pure_coulomb(convention: str = "half") -> PotentialModel:
    return PotentialModel("pure_coulomb", convention=convention)


@dataclass(frozen=True)
class TaylorJet:
    """Scaled Taylor coefficients ``coeffs[n] = V^(n)(point) / n!``."""

    point: float
    coeffs: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, n: int) -> float:
        """Raw n-th derivative (only sensible for small n)."""
        return float(self.coeffs[n]) * math.factorial(n)

    def __call__(self, q):
        """Evaluate the truncated Taylor polynomial at ``q``."""
        h = np.asarray(q, dtype=float) - self.point
        return np.polynomial.polynomial.polyval(h, self.coeffs)


def eval_value(model: PotentialModel, q):
    """V(q) for scalar or array ``q > 0``."""
    q = np.asarray(q, dtype=float)
    if np.any(q <= 0):
        raise DomainError("potential is defined for q > 0 only")
    if model.kind == "spiked_ho":
        v = 0.5 * (q * q + model.a * q ** (-model.b))
    elif model.kind == "pure_ho":
        v = 0.5 * q * q
    elif model.kind == "truncated_coulomb":
        v = -1.0 / np.sqrt(q * q + model.c * model.c)
    else:
        v = -1.0 / q
    return float(v) if v.ndim == 0 else v


def _power_jet(q0: float, p: float, order: int) -> np.ndarray:
    """Scaled Taylor coefficients of q**p about q0: binom(p, n) q0**(p-n)."""
    t = np.empty(order + 1)
    t[0] = q0**p
    for n in range(1, order + 1):
        t[n] = t[n - 1] * (p - n + 1) / (n * q0)
    return t


def _softened_coulomb_jet(q0: float, c: float, order: int) -> np.ndarray:
    # From (q^2 + c^2) V' = -q V:
    # (q0^2 + c^2)(n+1) t[n+1] + q0 (2n+1) t[n] + n t[n-1] = 0
    s = q0 * q0 + c * c
    t = np.empty(order + 1)
    t[0] = -1.0 / math.sqrt(s)
    if order >= 1:
        t[1] = -q0 * t[0] / s
    for n in range(1, order):
        t[n + 1] = -(q0 * (2 * n + 1) * t[n] + n * t[n - 1]) / (s * (n + 1))
    return t


def taylor_jet(model: PotentialModel, q0: float, order: int, cap: int = MAX_JET_ORDER) -> TaylorJet:
    """Exact scaled Taylor coefficients of V about ``q0`` through ``order``."""
    if q0 <= 0:
        raise DomainError(f"expansion point must be positive, got {q0}")
    if order < 0:
        raise ValidationError("jet order must be non-negative")
    if order > cap:
        raise CapacityError(f"jet order {order} exceeds cap {cap}")

    if model.kind in ("spiked_ho", "pure_ho"):
        t = np.zeros(order + 1)
        harmonic = (0.5 * q0 * q0, q0, 0.5)
        t[: min(3, order + 1)] = harmonic[: order + 1]
        if model.kind == "spiked_ho":
            t += 0.5 * model.a * _power_jet(q0, -model.b, order)
    elif model.kind == "truncated_coulomb":
        t = _softened_coulomb_jet(q0, model.c, order)
    else:
        t = -_power_jet(q0, -1.0, order)
    return TaylorJet(point=float(q0), coeffs=t)
