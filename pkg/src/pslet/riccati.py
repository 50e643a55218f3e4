"""Order-by-order Riccati recursion for nodeless states.

In the scaled coordinate ``x = sqrt(lbar) (q - q0) / q0`` the log-derivative of
the wavefunction is expanded as::

    U'(x) = sum_k Y_k(x) lbar**(-k/2),   Y_k = U^(k) + G^(k-1)

where ``U^(k)`` carries only odd powers of x and ``G^(k)`` only even powers.
Collecting the power ``lbar**(-k/2)`` of the Riccati equation gives, for every
k >= 1, the linear problem::

    -1/2 Y_k' + w x Y_k + R_k(x) = eps_k,
    R_k = v^(k) - 1/2 sum_{i=1}^{k-1} Y_i Y_{k-i}

with ``eps_k`` zero for odd k and the eigenvalue correction for even k.  The
polynomial is solved from its highest power downward; the constant term then
fixes ``eps_k``.  Odd k always produce an even ``Y_k`` (a G polynomial) and even
k an odd one (a U polynomial), so the odd-indexed U and G vanish identically.

Energies follow from ``E^(0) = eps_2 / q0**2`` and ``E^(n) = eps_{2n+2} / q0**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import CapacityError, ConsistencyError, DomainError, UnsupportedStateError
from .expansion import DEFAULT_TOL, ExpansionPoint, solve_q0
from .potentials import PotentialModel, TaylorJet, taylor_jet

#: default number of energy corrections E^(0)..E^(K) beyond the classical term
DEFAULT_K = 7
RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class ParityPolynomial:
    """Polynomial in x with a single parity.

    ``odd``: ``coeffs[m-1]`` multiplies ``x**(2m-1)``, m = 1..M.
    ``even``: ``coeffs[m]`` multiplies ``x**(2m)``, m = 0..M.
    """

    parity: str
    coeffs: tuple

    @classmethod
    def from_dense(cls, dense, parity: str) -> "ParityPolynomial":
        start = 1 if parity == "odd" else 0
        coeffs = tuple(float(c) for c in np.asarray(dense)[start::2])
        while coeffs and coeffs[-1] == 0.0:
            coeffs = coeffs[:-1]
        return cls(parity, coeffs)

    @property
    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return 2 * len(self.coeffs) - (1 if self.parity == "odd" else 2)

    def is_zero(self) -> bool:
        return not self.coeffs

    def dense(self) -> np.ndarray:
        out = np.zeros(max(self.degree + 1, 1))
        start = 1 if self.parity == "odd" else 0
        out[start::2][: len(self.coeffs)] = self.coeffs
        return out

    def __call__(self, x):
        return P.polyval(x, self.dense())


@dataclass
class RiccatiState:
    model: PotentialModel
    pt: ExpansionPoint
    jet: TaylorJet
    Y: list = field(default_factory=list)
    eps: list = field(default_factory=list)
    vcache: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        """Highest k solved."""
        return len(self.Y) - 1

    @property
    def U(self) -> list:
        return [ParityPolynomial.from_dense(y if k % 2 == 0 else [], "odd") for k, y in enumerate(self.Y)]

    @property
    def G(self) -> list:
        # G^(n) lives in Y_{n+1}; nonzero only for even n
        return [ParityPolynomial.from_dense(y if (k + 1) % 2 == 0 else [], "even") for k, y in enumerate(self.Y[1:])]

    @property
    def lambdas(self) -> list:
        """Eigenvalue corrections of the scaled problem, lambda^(0), lambda^(1), ..."""
        b = self.pt.beta
        out = []
        for k in range(2, len(self.eps), 2):
            lam = self.eps[k]
            if k == 2:
                lam -= b * (b + 1) / 2
            out.append(lam)
        return out

    @property
    def B1(self) -> float:
        return float(build_v(self, 1).coeffs[1])

    @property
    def B2(self) -> float:
        return float(build_v(self, 2).coeffs[2])


@dataclass(frozen=True)
class EnergySeries:
    e_minus2: float
    corrections: tuple
    lbar: float
    convention_factor: float = 1.0

    @property
    def leading(self) -> float:
        return self.lbar**2 * self.e_minus2

    def terms(self) -> np.ndarray:
        """Individual contributions ``E^(n) / lbar**n`` (half convention)."""
        c = np.asarray(self.corrections)
        return c / self.lbar ** np.arange(len(c))

    def truncated(self, K: int | None = None) -> float:
        """Reported energy ``factor * (lbar**2 E^(-2) + sum_{n<=K} E^(n)/lbar**n)``."""
        terms = self.terms()
        if K is not None:
            if K + 1 > len(terms):
                raise CapacityError(f"series holds {len(terms)} corrections, asked for K={K}")
            terms = terms[: K + 1]
        return self.convention_factor * (self.leading + math.fsum(terms))

    def smallest_term_index(self) -> int:
        return int(np.argmin(np.abs(self.terms())))


def _v_dense(state: RiccatiState, n: int) -> np.ndarray:
    pt = state.pt
    t = state.jet.coeffs
    if n + 2 > state.jet.order:
        raise CapacityError(f"v^({n}) needs a jet of order {n + 2}, have {state.jet.order}")
    b, w, q0, Q = pt.beta, pt.w, pt.q0, pt.bigQ
    v = np.zeros(n + 3)
    if n == 0:
        v[0] = (2 * b + 1) / 2
        v[2] = w * w / 2
    elif n == 1:
        v[1] = -(2 * b + 1)
        v[3] = q0**5 * t[3] / Q - 2
    else:
        sign = -1.0 if n % 2 else 1.0
        v[n] += sign * (2 * b + 1) * (n + 1) / 2
        v[n - 2] += sign * b * (b + 1) / 2 * (n - 1)
        v[n + 2] += sign * (n + 3) / 2 + q0 ** (n + 4) * t[n + 2] / Q
    return v


def build_v(state: RiccatiState, n: int) -> ParityPolynomial:
    """Reduced-potential piece multiplying ``lbar**(-n/2)``."""
    if n not in state.vcache:
        state.vcache[n] = _v_dense(state, n)
    return ParityPolynomial.from_dense(state.vcache[n], "odd" if n % 2 else "even")


def new_state(model: PotentialModel, pt: ExpansionPoint, max_k: int) -> RiccatiState:
    """Fresh state with ``Y_0 = -w x`` installed and a jet deep enough for ``max_k``."""
    if pt.n_r != 0:
        raise UnsupportedStateError(f"the Riccati recursion covers nodeless states only (n_r=0), got n_r={pt.n_r}")
    jet = taylor_jet(model, pt.q0, max_k + 2)
    state = RiccatiState(model=model, pt=pt, jet=jet)
    state.Y.append(np.array([0.0, -pt.w]))
    state.eps.append(0.0)
    return state


def _known_part(state: RiccatiState, k: int) -> np.ndarray:
    r = state.vcache.get(k)
    if r is None:
        build_v(state, k)
        r = state.vcache[k]
    r = np.concatenate([r, np.zeros(max(0, k + 3 - len(r)))])
    for i in range(1, k):
        prod = P.polymul(state.Y[i], state.Y[k - i])
        r[: len(prod)] -= 0.5 * prod
    return r


def solve_order(state: RiccatiState, k: int) -> RiccatiState:
    """Solve the slice ``lbar**(-k/2)`` of the Riccati equation in place."""
    if k < 1:
        raise ValueError("order k must be >= 1; k = 0 is installed by new_state")
    if state.order != k - 1:
        raise ValueError(f"orders must be solved in sequence; state is at {state.order}, asked for {k}")
    w = state.pt.w
    r = _known_part(state, k)
    deg = k + 1
    a = np.zeros(deg + 3)
    for j in range(deg + 1, 0, -1):
        a[j - 1] = (0.5 * (j + 1) * a[j + 1] - r[j]) / w
    a = a[: deg + 1]
    eps = r[0] - 0.5 * a[1]
    if k % 2:
        eps = 0.0

    lhs = np.zeros(deg + 2)
    lhs[:deg] += -0.5 * P.polyder(a)
    lhs[1 : deg + 2] += w * a
    lhs[: len(r)] += r
    lhs[0] -= eps
    scale = max(np.max(np.abs(r)), np.max(np.abs(w * a)), abs(eps), 1e-300)
    if np.max(np.abs(lhs)) > RESIDUAL_RTOL * scale:
        raise ConsistencyError(f"order {k} residual {np.max(np.abs(lhs)):.3e} exceeds tolerance (scale {scale:.3e})")
    if np.any(a[k % 2 :: 2] != 0.0):
        raise ConsistencyError(f"order {k} produced coefficients of the wrong parity")

    state.Y.append(a)
    state.eps.append(float(eps))
    return state


def solve_through(state: RiccatiState, max_k: int) -> RiccatiState:
    for k in range(state.order + 1, max_k + 1):
        solve_order(state, k)
    return state


def energy_corrections(state: RiccatiState, K: int) -> EnergySeries:
    """Energy coefficients ``E^(0)..E^(K)``, solving further orders as needed."""
    if state.pt.n_r != 0:
        raise UnsupportedStateError("energy corrections are available for n_r = 0 only")
    solve_through(state, 2 * K + 2)
    q2 = state.pt.q0**2
    corrections = tuple(state.eps[2 * n + 2] / q2 for n in range(K + 1))
    return EnergySeries(
        e_minus2=state.pt.e_minus2,
        corrections=corrections,
        lbar=state.pt.lbar,
        convention_factor=state.model.factor,
    )


def expand(model: PotentialModel, l: int, K: int = DEFAULT_K, n_r: int = 0, tol: float = DEFAULT_TOL):
    """Solve the expansion point and run the recursion; returns ``(state, series)``."""
    if n_r != 0:
        raise UnsupportedStateError(f"the Riccati recursion covers nodeless states only (n_r=0), got n_r={n_r}")
    pt = solve_q0(model, l, n_r, tol)
    state = new_state(model, pt, 2 * K + 2)
    series = energy_corrections(state, K)
    return state, series


def scaled_coordinate(pt: ExpansionPoint, q):
    return math.sqrt(pt.lbar) * (np.asarray(q, dtype=float) - pt.q0) / pt.q0


def log_amplitude(state: RiccatiState, q, order: int | None = None):
    """Exponent U(x(q)) with ``U = 0`` at q0, summed through ``lbar**(-order/2)``."""
    q = np.asarray(q, dtype=float)
    if np.any(q <= 0):
        raise DomainError("wavefunction is defined for q > 0 only")
    if state.pt.n_r != 0:
        raise UnsupportedStateError("wavefunction available for n_r = 0 only")
    kmax = state.order if order is None else order
    if kmax > state.order:
        raise CapacityError(f"order {kmax} requested, recursion solved through {state.order}")
    x = scaled_coordinate(state.pt, q)
    s = 1.0 / math.sqrt(state.pt.lbar)
    total = np.zeros_like(x)
    for k in range(kmax + 1):
        total = total + s**k * P.polyval(x, P.polyint(state.Y[k]))
    return total


def wavefunction(state: RiccatiState, q, order: int | None = None):
    """Unnormalized nodeless radial function, equal to 1 at q0.

    Trustworthy for ``|q - q0| < q0`` only (see :func:`norm_squared`).
    """
    return np.exp(log_amplitude(state, q, order))


def norm_squared(state: RiccatiState, q_max: float | None = None, order: int | None = None) -> float:
    """``int_0^q_max |psi|^2 dq`` by adaptive quadrature.

    The exponent is a power series in ``(q - q0)/q0``; terms such as
    ``ln(q/q0)`` make it converge only for ``|q - q0| < q0``, so the default
    upper limit is ``2 q0``.  Beyond that the truncated amplitude means nothing.
    """
    from scipy.integrate import quad

    q0 = state.pt.q0
    if q_max is None:
        q_max = 2.0 * q0
    val, _ = quad(lambda q: wavefunction(state, q, order) ** 2, 1e-12 * q0, q_max, points=[q0], limit=200)
    return float(val)
