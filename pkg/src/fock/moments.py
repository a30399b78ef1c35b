"""Expectation values of normal-ordered polynomials in a Fock state."""
from __future__ import annotations

import numpy as np
from scipy.special import gammaln

from src.algebra import NormalPoly
from src.utils.errors import AlgebraError
from src.utils.logger import get_logger
from .space import StateVector

logger = get_logger("hocm.fock.moments")


def lower(amplitudes: np.ndarray, axis: int, power: int) -> np.ndarray:
    """Apply ``a^power`` along ``axis``: ``out[n] = √((n+j)!/n!) ψ[n+j]``."""
    if power == 0:
        return amplitudes
    dim = amplitudes.shape[axis]
    out = np.zeros_like(amplitudes)
    if power >= dim:
        return out
    n = np.arange(dim - power)
    factors = np.exp(0.5 * (gammaln(n + power + 1) - gammaln(n + 1)))
    shape = [1] * amplitudes.ndim
    shape[axis] = dim - power
    src = np.take(amplitudes, np.arange(power, dim), axis=axis)
    dst = [slice(None)] * amplitudes.ndim
    dst[axis] = slice(0, dim - power)
    out[tuple(dst)] = src * factors.reshape(shape)
    return out


class MomentEvaluator:
    """
    Evaluates ``⟨ψ|p|ψ⟩`` for many polynomials on one state.

    Each normal-ordered monomial ``∏ a^{†i} a^{j}`` equals ``⟨A_i ψ, A_j ψ⟩``
    with ``A_n = ∏ a^{n}``, so only annihilation strings are ever applied.
    Lowered vectors and monomial values are cached per evaluator.
    """

    def __init__(self, psi: StateVector):
        self.psi = psi
        self._lowered: dict = {(): psi.amplitudes}
        self._values: dict = {}
        self._warned: set = set()

    def _axis(self, mode: str) -> int:
        if mode not in self.psi.modes:
            raise AlgebraError(
                f"mode {mode!r} is not simulated in this state (modes: {', '.join(self.psi.modes)})"
            )
        return self.psi.modes.index(mode)

    def _check_margin(self, mode: str, power: int) -> None:
        cutoff = self.psi.cutoffs.of(mode)
        if 2 * power > cutoff and mode not in self._warned:
            self._warned.add(mode)
            logger.warning(
                "Moment exponent %d on mode %s exceeds half the cutoff %d; check truncation convergence",
                power, mode, cutoff,
            )

    def lowered(self, exps: tuple) -> np.ndarray:
        """``∏ a_m^{j_m} ψ`` for ``exps = ((mode, j), ...)`` sorted by mode."""
        if exps in self._lowered:
            return self._lowered[exps]
        *head, (mode, power) = exps
        base = self.lowered(tuple(head))
        self._check_margin(mode, power)
        result = lower(base, self._axis(mode), power)
        self._lowered[exps] = result
        return result

    def monomial(self, key: tuple) -> complex:
        if key in self._values:
            return self._values[key]
        for mode, _, _ in key:
            self._axis(mode)
        left = tuple((m, i) for m, i, _ in key if i)
        right = tuple((m, j) for m, _, j in key if j)
        value = complex(np.vdot(self.lowered(left), self.lowered(right)))
        self._values[key] = value
        return value

    def expect(self, p: NormalPoly) -> complex:
        return sum((c * self.monomial(key) for key, c in p.items()), 0j)


def moment(psi: StateVector, p: NormalPoly) -> complex:
    """``⟨ψ| p |ψ⟩`` for a normal-ordered polynomial ``p``."""
    return MomentEvaluator(psi).expect(p)
