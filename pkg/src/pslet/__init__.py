"""Shifted large-l (1/lbar) expansion for spiked oscillators and truncated Coulomb wells.

Quick start::

    >>> from pslet import spiked_ho, expand
    >>> state, series = expand(spiked_ho(1000, 2.5, "doubled"), l=0)
    >>> round(series.truncated(4), 4)
    44.9555
"""

from .errors import (
    CapacityError,
    ConsistencyError,
    DegeneratePadeError,
    DomainError,
    NoBoundStateError,
    NoEigenvalueError,
    NoHarmonicMinimumError,
    PsletError,
    UnsupportedStateError,
    ValidationError,
)
from .expansion import ExpansionPoint, frequency_w, leading_energy, solve_q0
from .numerov import RadialGrid, ShootingResult, eigenfunction, solve_bound_state
from .pade import PadeApproximant, fit_pade, resummed_energy
from .potentials import (
    PotentialModel,
    TaylorJet,
    eval_value,
    pure_coulomb,
    pure_ho,
    spiked_ho,
    taylor_jet,
    truncated_coulomb,
)
from .riccati import (
    EnergySeries,
    ParityPolynomial,
    RiccatiState,
    energy_corrections,
    expand,
    log_amplitude,
    new_state,
    norm_squared,
    solve_order,
    wavefunction,
)
from .workbench import ResultRecord, RunSpec, load_baseline, run_table, solve_record

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "ConsistencyError", "DegeneratePadeError", "DomainError", "NoBoundStateError",
    "NoEigenvalueError", "NoHarmonicMinimumError", "PsletError", "UnsupportedStateError", "ValidationError",
    "ExpansionPoint", "frequency_w", "leading_energy", "solve_q0",
    "RadialGrid", "ShootingResult", "eigenfunction", "solve_bound_state",
    "PadeApproximant", "fit_pade", "resummed_energy",
    "PotentialModel", "TaylorJet", "eval_value", "pure_coulomb", "pure_ho", "spiked_ho", "taylor_jet",
    "truncated_coulomb",
    "EnergySeries", "ParityPolynomial", "RiccatiState", "energy_corrections", "expand", "log_amplitude",
    "new_state", "norm_squared", "solve_order", "wavefunction",
    "ResultRecord", "RunSpec", "load_baseline", "run_table", "solve_record",
]
