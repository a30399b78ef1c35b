"""
Partially degenerate high-order Hamiltonian ``i(a^{†k} b^{†l} p − a^k b^l p^†)``
(units of ħκ) on the truncated Fock space, and the initial state it acts on.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from config import NATIVE_MODES, PUMP_MODE
from src.utils.errors import ConfigError, CutoffError
from .space import FockCutoffs, StateVector, coherent_amplitudes

QUANTUM = "quantum"
CLASSICAL = "classical"


@dataclass(frozen=True)
class HamiltonianSpec:
    """Orders ``k``, ``l``, coupling and pump model of the down-conversion process."""

    k: int = 1
    l: int = 2
    alpha_p: float = 5.0
    pump: str = QUANTUM
    kappa: float = 1.0

    def __post_init__(self):
        if self.k < 1 or self.l < 1:
            raise ConfigError(f"k and l must be positive integers, got k={self.k}, l={self.l}")
        if self.k + self.l < 2:
            raise ConfigError("k + l must be at least 2")
        if self.alpha_p < 0:
            raise ConfigError(f"pump amplitude alpha_p must be >= 0, got {self.alpha_p}")
        if self.pump not in (QUANTUM, CLASSICAL):
            raise ConfigError(f"pump must be {QUANTUM!r} or {CLASSICAL!r}, got {self.pump!r}")

    @property
    def modes(self) -> tuple:
        return NATIVE_MODES + ((PUMP_MODE,) if self.pump == QUANTUM else ())

    def tau_for_xi(self, xi: float) -> float:
        """
        Dimensionless time for interaction strength ``ξ = κ t α_p``.

        With ``α_p = 0`` every time maps to ``ξ = 0``, so only ``ξ = 0`` is
        accepted there.
        """
        if self.alpha_p == 0:
            if xi != 0:
                raise ConfigError(f"xi = {xi} is unreachable with alpha_p = 0 (xi = kappa * t * alpha_p)")
            return 0.0
        return xi / (self.kappa * self.alpha_p)

    def cutoffs(self, mapping: dict) -> FockCutoffs:
        return FockCutoffs.from_mapping(mapping, self.modes)

    def closed_cutoffs(self, pump_cutoff: int) -> dict:
        """
        Down-conversion cutoffs the quantum-pump dynamics never reach past.

        Each event moves one pump photon into ``k`` a-photons and ``l``
        b-photons, so ``n_a ≤ k·N_p`` and ``n_b ≤ l·N_p`` hold exactly.
        """
        return {"a": self.k * pump_cutoff, "b": self.l * pump_cutoff, PUMP_MODE: pump_cutoff}

    def closes(self, mapping: dict) -> bool:
        """True when ``mapping`` holds every photon-number sector the quantum pump can feed."""
        if self.pump != QUANTUM or PUMP_MODE not in mapping:
            return False
        closed = self.closed_cutoffs(mapping[PUMP_MODE])
        return all(mapping[m] >= closed[m] for m in NATIVE_MODES)


def _lowering(cutoff: int, power: int) -> sp.csr_matrix:
    n = np.arange(cutoff + 1)
    a = sp.diags(np.sqrt(n[1:]), offsets=1, shape=(cutoff + 1, cutoff + 1), format="csr")
    out = sp.identity(cutoff + 1, format="csr")
    for _ in range(power):
        out = out @ a
    return out.tocsr()


@lru_cache(maxsize=16)
def hamiltonian_matrix(spec: HamiltonianSpec, cutoffs: FockCutoffs) -> sp.csr_matrix:
    """Sparse ``H/ħκ`` in the product basis ordered like ``cutoffs.modes``."""
    if cutoffs.modes != spec.modes:
        raise CutoffError(f"cutoff modes {cutoffs.modes} do not match Hamiltonian modes {spec.modes}")
    cutoffs.check_budget()
    a_k = _lowering(cutoffs.of("a"), spec.k)
    b_l = _lowering(cutoffs.of("b"), spec.l)
    if spec.pump == QUANTUM:
        p = _lowering(cutoffs.of(PUMP_MODE), 1)
        raising = sp.kron(sp.kron(a_k.T, b_l.T), p)
    else:
        raising = spec.alpha_p * sp.kron(a_k.T, b_l.T)
    raising = raising.tocsr().astype(complex)
    h = 1j * spec.kappa * (raising - raising.conj().T)
    return h.tocsr()


def _check_state(spec: HamiltonianSpec, cutoffs: FockCutoffs, psi: StateVector) -> None:
    if psi.cutoffs != cutoffs:
        raise CutoffError(
            f"cutoff mismatch: state has {psi.cutoffs.as_dict()}, expected {cutoffs.as_dict()}"
        )
    if cutoffs.modes != spec.modes:
        raise CutoffError(f"state modes {cutoffs.modes} do not match Hamiltonian modes {spec.modes}")


def apply_hamiltonian(spec: HamiltonianSpec, cutoffs: FockCutoffs, psi: StateVector) -> StateVector:
    _check_state(spec, cutoffs, psi)
    return StateVector(cutoffs, hamiltonian_matrix(spec, cutoffs) @ psi.flat)


def initial_state(cutoffs: FockCutoffs, spec: HamiltonianSpec) -> StateVector:
    """Vacuum down-conversion modes, coherent (or classical) pump."""
    if cutoffs.modes != spec.modes:
        raise CutoffError(f"cutoff modes {cutoffs.modes} do not match Hamiltonian modes {spec.modes}")
    cutoffs.check_budget()
    amps = np.zeros(cutoffs.dims, dtype=complex)
    if spec.pump == QUANTUM:
        amps[0, 0, :] = coherent_amplitudes(spec.alpha_p, cutoffs.of(PUMP_MODE))
    else:
        amps[0, 0] = 1.0
    return StateVector(cutoffs, amps, {"tau": 0.0, "xi": 0.0})
