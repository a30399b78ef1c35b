"""Truncated Fock-space simulation of the down-conversion modes and pump."""
from .space import (
    FockCutoffs,
    StateVector,
    vacuum_state,
    coherent_amplitudes,
    required_pump_cutoff,
)
from .hamiltonian import (
    QUANTUM,
    CLASSICAL,
    HamiltonianSpec,
    hamiltonian_matrix,
    apply_hamiltonian,
    initial_state,
)
from .evolution import EvolutionParams, evolve
from .moments import MomentEvaluator, moment, lower
from .beam_splitter import STANDARD, MIRRORED, CONVENTIONS, apply_bs_unitary, mixing_angle

__all__ = [
    "FockCutoffs",
    "StateVector",
    "vacuum_state",
    "coherent_amplitudes",
    "required_pump_cutoff",
    "QUANTUM",
    "CLASSICAL",
    "HamiltonianSpec",
    "hamiltonian_matrix",
    "apply_hamiltonian",
    "initial_state",
    "EvolutionParams",
    "evolve",
    "MomentEvaluator",
    "moment",
    "lower",
    "STANDARD",
    "MIRRORED",
    "CONVENTIONS",
    "apply_bs_unitary",
    "mixing_angle",
]
