"""
Truncated multimode Fock space: cutoffs and immutable state snapshots.

Amplitudes are stored as an ndarray with one axis per mode, in the mode order
of the cutoffs (row-major over the product basis ``|n_0, n_1, ...⟩``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np
from scipy.special import gammaln
from scipy.stats import poisson

from config import MAX_BASIS_DIM, PUMP_TAIL_TOL
from src.utils.errors import CutoffError, ConfigError
from src.utils.logger import get_logger

logger = get_logger("hocm.fock")


@dataclass(frozen=True)
class FockCutoffs:
    """Per-mode maximum photon number; basis dimension per mode is ``N + 1``."""

    levels: tuple  # tuple[tuple[str, int], ...]

    def __post_init__(self):
        levels = tuple((str(m), int(n)) for m, n in self.levels)
        object.__setattr__(self, "levels", levels)
        modes = [m for m, _ in levels]
        if len(set(modes)) != len(modes):
            raise ConfigError(f"duplicate mode in cutoffs {levels}")
        for mode, n in levels:
            if n < 0:
                raise ConfigError(f"cutoff for mode {mode!r} must be >= 0, got {n}")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, int], modes: tuple | None = None) -> "FockCutoffs":
        modes = modes or tuple(mapping)
        missing = [m for m in modes if m not in mapping]
        if missing:
            raise ConfigError(f"no cutoff given for mode(s) {', '.join(missing)}")
        return cls(tuple((m, mapping[m]) for m in modes))

    @property
    def modes(self) -> tuple:
        return tuple(m for m, _ in self.levels)

    @property
    def dims(self) -> tuple:
        return tuple(n + 1 for _, n in self.levels)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64))

    def of(self, mode: str) -> int:
        for m, n in self.levels:
            if m == mode:
                return n
        raise CutoffError(f"mode {mode!r} is not part of this Fock space ({', '.join(self.modes)})")

    def axis(self, mode: str) -> int:
        try:
            return self.modes.index(mode)
        except ValueError:
            raise CutoffError(f"mode {mode!r} is not part of this Fock space ({', '.join(self.modes)})") from None

    def as_dict(self) -> dict:
        return dict(self.levels)

    def scaled(self, factor: int) -> "FockCutoffs":
        return FockCutoffs(tuple((m, n * factor) for m, n in self.levels))

    def extended(self, extra: Mapping[str, int]) -> "FockCutoffs":
        return FockCutoffs(self.levels + tuple(extra.items()))

    def check_budget(self, budget: int = MAX_BASIS_DIM) -> None:
        if self.dim > budget:
            raise CutoffError(
                f"basis dimension {self.dim} exceeds the memory budget {budget} "
                f"(cutoffs {self.as_dict()})",
                required=self.dim,
            )


@dataclass(frozen=True, eq=False)
class StateVector:
    """Immutable pure state on a truncated Fock basis."""

    cutoffs: FockCutoffs
    amplitudes: np.ndarray
    meta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(self.cutoffs.dims)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def modes(self) -> tuple:
        return self.cutoffs.modes

    @property
    def flat(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.flat))

    def normalized(self) -> "StateVector":
        return StateVector(self.cutoffs, self.amplitudes / self.norm(), self.meta)

    def with_meta(self, **meta) -> "StateVector":
        return StateVector(self.cutoffs, self.amplitudes, {**self.meta, **meta})

    def leakage(self) -> dict:
        """Probability on the top (cutoff-maximal) layer of each mode."""
        probs = np.abs(self.amplitudes) ** 2
        return {
            mode: float(np.take(probs, -1, axis=ax).sum())
            for ax, mode in enumerate(self.modes)
        }

    def max_leakage(self) -> float:
        return max(self.leakage().values(), default=0.0)

    def photon_number(self, mode: str) -> float:
        ax = self.cutoffs.axis(mode)
        probs = np.abs(self.amplitudes) ** 2
        marginal = probs.sum(axis=tuple(i for i in range(probs.ndim) if i != ax))
        return float(np.dot(np.arange(marginal.size), marginal))

    def extend_vacuum(self, extra: Mapping[str, int]) -> "StateVector":
        """Tensor vacuum modes onto the end of the mode order."""
        amps = self.amplitudes
        for _, n in extra.items():
            vac = np.zeros(n + 1, dtype=complex)
            vac[0] = 1.0
            amps = np.multiply.outer(amps, vac)
        cutoffs = self.cutoffs.extended(extra)
        cutoffs.check_budget()
        return StateVector(cutoffs, amps, self.meta)

    # ── binary dump ───────────────────────────────────────────
    def dump(self, path: Path) -> Path:
        """``FOCK <N_0> <N_1> ...\\n`` followed by little-endian f64 (re, im) pairs."""
        path = Path(path)
        header = "FOCK " + " ".join(str(n) for _, n in self.cutoffs.levels) + "\n"
        interleaved = np.empty(2 * self.flat.size, dtype="<f8")
        interleaved[0::2] = self.flat.real
        interleaved[1::2] = self.flat.imag
        with open(path, "wb") as fh:
            fh.write(header.encode("ascii"))
            fh.write(interleaved.tobytes())
        logger.info("State dump written → %s  (%d amplitudes)", path, self.flat.size)
        return path

    @classmethod
    def load(cls, path: Path, modes: tuple) -> "StateVector":
        with open(path, "rb") as fh:
            header = fh.readline().decode("ascii").split()
            payload = np.frombuffer(fh.read(), dtype="<f8")
        if not header or header[0] != "FOCK" or len(header) - 1 != len(modes):
            raise ConfigError(f"{path} is not a Fock dump for modes {modes}")
        cutoffs = FockCutoffs(tuple(zip(modes, (int(x) for x in header[1:]))))
        amps = payload[0::2] + 1j * payload[1::2]
        return cls(cutoffs, amps)


def vacuum_state(cutoffs: FockCutoffs) -> StateVector:
    amps = np.zeros(cutoffs.dims, dtype=complex)
    amps[(0,) * len(cutoffs.dims)] = 1.0
    return StateVector(cutoffs, amps)


def required_pump_cutoff(alpha: float, tol: float = PUMP_TAIL_TOL) -> int:
    """Smallest N whose truncated coherent state misses at most ``tol`` probability."""
    if alpha == 0:
        return 0
    mean = alpha ** 2
    n = int(np.ceil(mean))
    while poisson.sf(n, mean) > tol:
        n += 1
    return n


def coherent_amplitudes(alpha: float, cutoff: int, tol: float = PUMP_TAIL_TOL) -> np.ndarray:
    """Renormalised ``e^{-|α|²/2} α^n / √n!`` for ``n ≤ cutoff``."""
    n = np.arange(cutoff + 1)
    if alpha == 0:
        amps = np.zeros(cutoff + 1)
        amps[0] = 1.0
        return amps.astype(complex)
    deficit = float(poisson.sf(cutoff, alpha ** 2))
    if deficit > tol:
        required = required_pump_cutoff(alpha, tol)
        raise CutoffError(
            f"pump cutoff {cutoff} truncates |alpha={alpha:g}> with probability deficit "
            f"{deficit:.2e} > {tol:.0e}; required cutoff >= {required}",
            required=required,
        )
    log_amps = -0.5 * alpha ** 2 + n * np.log(alpha) - 0.5 * gammaln(n + 1)
    amps = np.exp(log_amps)
    return (amps / np.linalg.norm(amps)).astype(complex)
