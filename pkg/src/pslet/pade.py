"""Padé approximants of the energy correction series in 1/lbar."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import CapacityError, DegeneratePadeError
from .riccati import EnergySeries

COND_LIMIT = 1e12
MATCH_RTOL = 1e-9


@dataclass(frozen=True)
class PadeApproximant:
    """Rational function ``sum p_i x**i / (1 + sum q_j x**j)``."""

    num_coeffs: np.ndarray
    den_coeffs: np.ndarray
    N: int
    M: int
    condition: float = 1.0

    def __call__(self, x):
        return P.polyval(x, self.num_coeffs) / P.polyval(x, self.den_coeffs)

    def taylor(self, order: int) -> np.ndarray:
        """Maclaurin coefficients of the rational function through ``order``."""
        p = np.zeros(order + 1)
        p[: min(len(self.num_coeffs), order + 1)] = self.num_coeffs[: order + 1]
        q = self.den_coeffs
        out = np.zeros(order + 1)
        for n in range(order + 1):
            acc = p[n]
            for j in range(1, min(n, len(q) - 1) + 1):
                acc -= q[j] * out[n - j]
            out[n] = acc
        return out


def fit_pade(series, N: int, M: int) -> PadeApproximant:
    """[N/M] Padé approximant to the power series with coefficients ``series``.

    The denominator solves the M x M Toeplitz system built from
    ``c[N-M+1] .. c[N+M]``; the numerator follows by convolution.  Singular
    systems are accepted only if a least-squares solution still reproduces the
    series, otherwise :class:`DegeneratePadeError` is raised.
    """
    c = np.asarray(series, dtype=float)
    if N < 0 or M < 0:
        raise ValueError("Padé degrees must be non-negative")
    if len(c) < N + M + 1:
        raise CapacityError(f"[{N}/{M}] needs {N + M + 1} coefficients, got {len(c)}")
    if not np.all(np.isfinite(c)):
        raise DegeneratePadeError("non-finite series coefficient")
    c = c[: N + M + 1]

    def coef(i):
        return c[i] if i >= 0 else 0.0

    cond = 1.0
    q = np.ones(M + 1)
    if M > 0:
        A = np.array([[coef(N + i - j) for j in range(1, M + 1)] for i in range(1, M + 1)])
        rhs = -np.array([coef(N + i) for i in range(1, M + 1)])
        cond = float(np.linalg.cond(A, 1)) if np.any(A) else np.inf
        if cond < COND_LIMIT:
            q[1:] = np.linalg.solve(A, rhs)
        else:
            q[1:] = np.linalg.lstsq(A, rhs, rcond=None)[0]
    p = np.array([sum(q[j] * coef(i - j) for j in range(min(i, M) + 1)) for i in range(N + 1)])

    approx = PadeApproximant(p, q, N, M, cond)
    # linearized conditions q * c - p = 0 through x**(N+M), relative to the size of the terms
    lhs = np.convolve(q, c)[: N + M + 1]
    lhs[: N + 1] -= p
    scale = np.max(np.convolve(np.abs(q), np.abs(c))[: N + M + 1])
    residual = float(np.max(np.abs(lhs))) / (scale or 1.0)
    if residual > MATCH_RTOL:
        raise DegeneratePadeError(f"[{N}/{M}] table is degenerate (condition {cond:.3g}, match residual {residual:.3g})", residual)
    return approx


def resummed_energy(series: EnergySeries, N: int, M: int, shift: int = 1, zero_atol: float = 1e-12) -> float:
    """``factor * (lbar**2 E^(-2) + R(1/lbar))`` with R an [N/M] Padé approximant.

    With ``shift=1`` (default) the approximant is fitted to
    ``x * sum_n E^(n) x**n``, the correction series indexed as in the scaled
    eigenvalue ``lambda = q0**2 sum_n E^(n) lbar**-(n+1)``, and divided by x
    afterwards.  ``shift=0`` fits ``sum_n E^(n) x**n`` itself.  A series whose
    coefficients are all below ``zero_atol * max(1, |lead|)`` is treated as
    identically zero.
    """
    c = np.asarray(series.corrections, dtype=float)
    need = N + M + 1 - shift
    if len(c) < need:
        raise CapacityError(f"[{N}/{M}] with shift {shift} needs {need} corrections, series has {len(c)}")
    lead = series.leading
    if np.all(np.abs(c[:need]) <= zero_atol * max(1.0, abs(lead))):
        return series.convention_factor * lead
    approx = fit_pade(np.concatenate([np.zeros(shift), c[:need]]), N, M)
    x = 1.0 / series.lbar
    return series.convention_factor * (lead + float(approx(x)) / x**shift)
