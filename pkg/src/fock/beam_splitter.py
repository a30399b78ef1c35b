"""Exact two-mode beam-splitter unitaries in the truncated Fock basis."""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from src.utils.errors import ConfigError
from .space import StateVector

STANDARD = "standard"
MIRRORED = "mirrored"
CONVENTIONS = (STANDARD, MIRRORED)


def mixing_angle(transmittance: float, convention: str = STANDARD) -> float:
    """``cos θ = √T``; the mirrored convention flips the sign of the reflected arm."""
    if not 0.0 <= transmittance <= 1.0:
        raise ConfigError(f"transmittance must lie in [0, 1], got {transmittance}")
    if convention not in CONVENTIONS:
        raise ConfigError(f"unknown beam-splitter convention {convention!r}")
    theta = float(np.arccos(np.sqrt(transmittance)))
    return theta if convention == STANDARD else -theta


@lru_cache(maxsize=64)
def bs_unitary(dim_x: int, dim_y: int, theta: float) -> np.ndarray:
    """``exp[θ(x† y − x y†)]`` on the ``dim_x × dim_y`` two-mode block."""
    ax = np.diag(np.sqrt(np.arange(1, dim_x)), 1)
    ay = np.diag(np.sqrt(np.arange(1, dim_y)), 1)
    generator = theta * (np.kron(ax.T, ay) - np.kron(ax, ay.T))
    return expm(generator)


def apply_bs_unitary(
    psi: StateVector,
    mode_pair: tuple,
    transmittance: float,
    convention: str = STANDARD,
) -> StateVector:
    """
    Mix ``mode_pair = (x, y)`` so that in the Heisenberg picture
    ``x → √T x + √(1−T) y`` and ``y → −√(1−T) x + √T y`` (standard convention).
    """
    x, y = mode_pair
    ax, ay = psi.cutoffs.axis(x), psi.cutoffs.axis(y)
    theta = mixing_angle(transmittance, convention)
    if theta == 0.0:
        return psi
    dx, dy = psi.cutoffs.dims[ax], psi.cutoffs.dims[ay]
    u = bs_unitary(dx, dy, theta)

    moved = np.moveaxis(psi.amplitudes, (ax, ay), (0, 1))
    rest = moved.shape[2:]
    mixed = (u @ moved.reshape(dx * dy, -1)).reshape((dx, dy) + rest)
    return StateVector(psi.cutoffs, np.moveaxis(mixed, (0, 1), (ax, ay)), psi.meta)
