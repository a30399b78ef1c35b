"""Schrödinger evolution ``dψ/dτ = −i (H/ħκ) ψ`` on the truncated space."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.sparse.linalg import expm_multiply

from config import INTEGRATOR_PARAMS, TOLERANCES
from src.utils.errors import ConfigError, EvolutionError
from src.utils.logger import get_logger
from .hamiltonian import HamiltonianSpec, _check_state, hamiltonian_matrix
from .space import StateVector

logger = get_logger("hocm.fock.evolution")


@dataclass(frozen=True)
class EvolutionParams:
    """
    Attributes:
        tau: dimensionless time κt (``ξ = τ α_p``)
        method: ``expm`` (scipy ``expm_multiply``) or ``rk`` (embedded DOP853)
        rtol/atol: step control of the Runge–Kutta path
        norm_tol: allowed ``|‖ψ‖ − 1|`` after the step
        leakage_threshold: top-layer probability that sets the leakage flag
    """

    tau: float
    method: str = INTEGRATOR_PARAMS["method"]
    rtol: float = INTEGRATOR_PARAMS["rtol"]
    atol: float = INTEGRATOR_PARAMS["atol"]
    norm_tol: float = TOLERANCES["norm"]
    leakage_threshold: float = TOLERANCES["leakage"]

    def __post_init__(self):
        if self.tau < 0:
            raise ConfigError(f"evolution time must be >= 0, got tau={self.tau}")
        if self.method not in ("expm", "rk"):
            raise ConfigError(f"unknown integrator {self.method!r} (expected 'expm' or 'rk')")


def _propagate(h, psi0: np.ndarray, params: EvolutionParams, xi: float | None) -> np.ndarray:
    if params.method == "expm":
        return expm_multiply(-1j * params.tau * h, psi0)

    result = solve_ivp(
        lambda _t, y: -1j * (h @ y),
        (0.0, params.tau),
        psi0,
        method="DOP853",
        rtol=params.rtol,
        atol=params.atol,
    )
    if result.status != 0:
        raise EvolutionError(
            f"step control failed after {result.nfev} evaluations: {result.message}", xi=xi
        )
    logger.debug("DOP853 finished in %d RHS evaluations", result.nfev)
    return result.y[:, -1]


def evolve(
    psi: StateVector,
    spec: HamiltonianSpec,
    tau: float | EvolutionParams,
    xi: float | None = None,
) -> StateVector:
    """
    Evolve ``psi`` for time ``tau``; the returned snapshot carries
    ``tau``, ``xi``, ``norm_drift``, ``leakage`` and ``leakage_flag`` in ``meta``.
    No renormalisation is applied.
    """
    params = tau if isinstance(tau, EvolutionParams) else EvolutionParams(tau=float(tau))
    _check_state(spec, psi.cutoffs, psi)
    if xi is None:
        xi = params.tau * spec.kappa * spec.alpha_p

    if params.tau == 0:
        out = psi.amplitudes
    else:
        h = hamiltonian_matrix(spec, psi.cutoffs)
        out = _propagate(h, psi.flat, params, xi)

    evolved = StateVector(psi.cutoffs, out)
    drift = abs(evolved.norm() - 1.0)
    if drift > params.norm_tol:
        raise EvolutionError(f"norm drift {drift:.2e} exceeds {params.norm_tol:.0e}", xi=xi)

    leakage = evolved.leakage()
    worst_mode = max(leakage, key=leakage.get)
    flag = leakage[worst_mode] > params.leakage_threshold
    if flag:
        logger.warning(
            "Boundary leakage %.2e on mode %s at xi=%.4f exceeds %.0e; raise the cutoff",
            leakage[worst_mode], worst_mode, xi, params.leakage_threshold,
        )
    return evolved.with_meta(
        tau=params.tau,
        xi=xi,
        norm_drift=drift,
        leakage=leakage[worst_mode],
        leakage_flag=flag,
    )
