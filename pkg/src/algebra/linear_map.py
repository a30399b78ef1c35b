"""Passive linear maps between mode sets and operator substitution."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from src.utils.errors import AlgebraError
from .poly import NormalPoly, multiply


@dataclass(frozen=True)
class LinearModeMap:
    """
    Output annihilation operators expanded over input annihilation operators.

    Attributes:
        rows: output mode → tuple of ``(input mode, amplitude)``
        ancillas: input modes that enter the network in vacuum
    """

    rows: Mapping[str, tuple]
    ancillas: frozenset = field(default_factory=frozenset)

    @classmethod
    def identity(cls, modes: Iterable[str]) -> "LinearModeMap":
        return cls({m: ((m, 1.0 + 0j),) for m in modes})

    @property
    def outputs(self) -> tuple:
        return tuple(self.rows)

    @property
    def inputs(self) -> tuple:
        seen: dict = {}
        for row in self.rows.values():
            for mode, _ in row:
                seen.setdefault(mode, None)
        return tuple(seen)

    @property
    def native_inputs(self) -> tuple:
        return tuple(m for m in self.inputs if m not in self.ancillas)

    def row(self, output: str) -> tuple:
        try:
            return self.rows[output]
        except KeyError:
            raise AlgebraError(
                f"mode {output!r} is not an output of the map (outputs: {', '.join(self.outputs)})"
            ) from None

    def matrix(self, outputs: Iterable[str] | None = None, inputs: Iterable[str] | None = None) -> np.ndarray:
        outputs = tuple(outputs or self.outputs)
        inputs = tuple(inputs or self.inputs)
        col = {m: c for c, m in enumerate(inputs)}
        out = np.zeros((len(outputs), len(inputs)), dtype=complex)
        for r, name in enumerate(outputs):
            for mode, amp in self.row(name):
                out[r, col[mode]] += amp
        return out

    def unitarity_residual(self) -> float:
        """``‖U U† − 1‖_max`` for the square map; ``inf`` when not square."""
        u = self.matrix()
        if u.shape[0] != u.shape[1]:
            return float("inf")
        return float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))

    def without_inputs(self, dropped: Iterable[str]) -> "LinearModeMap":
        dropped = frozenset(dropped)
        return LinearModeMap(
            {o: tuple((m, a) for m, a in row if m not in dropped) for o, row in self.rows.items()},
            self.ancillas - dropped,
        )


def _linear(row: tuple, conjugate: bool) -> NormalPoly:
    if conjugate:
        return NormalPoly({((m, 1, 0),): np.conj(a) for m, a in row})
    return NormalPoly({((m, 0, 1),): a for m, a in row})


def substitute(p: NormalPoly, mapping: LinearModeMap) -> NormalPoly:
    """
    Replace every output-mode letter of ``p`` by its expansion over the map's inputs.

    A normal-ordered monomial equals (creations of all modes)·(annihilations of
    all modes), so the substituted product is formed in that order and
    re-normal-ordered over the input modes.
    """
    powers: dict = {}

    def power(mode: str, n: int, conjugate: bool) -> NormalPoly:
        key = (mode, n, conjugate)
        if key not in powers:
            powers[key] = _linear(mapping.row(mode), conjugate) ** n
        return powers[key]

    acc: dict = {}
    for key, coeff in p.items():
        creations = NormalPoly.constant(coeff)
        annihilations = NormalPoly.constant(1.0)
        for mode, i, j in key:
            if i:
                creations = multiply(creations, power(mode, i, True))
            if j:
                annihilations = multiply(annihilations, power(mode, j, False))
        for k, c in multiply(creations, annihilations).items():
            acc[k] = acc.get(k, 0j) + c
    return NormalPoly(acc)
