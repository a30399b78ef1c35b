"""Beam-splitter networks and their compiled linear mode maps."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from src.algebra import LinearModeMap
from src.fock.beam_splitter import CONVENTIONS, STANDARD
from src.utils.errors import ConfigError, NumericalError
from src.utils.logger import get_logger

logger = get_logger("hocm.network")

VACUUM_TOKENS = ("vac", "vacuum", "ancilla")
UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class BeamSplitter:
    """
    One beam splitter acting on wires ``modes = (x, y)``.

    ``y`` may be a vacuum token (``vac``), which opens a fresh ancilla.
    ``outputs`` renames the two output wires; by default they keep ``x, y``.
    """

    modes: tuple
    transmittance: float
    outputs: tuple | None = None
    convention: str = STANDARD

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if self.outputs is not None:
            object.__setattr__(self, "outputs", tuple(self.outputs))
        if len(self.modes) != 2:
            raise ConfigError(f"a beam splitter needs exactly two modes, got {self.modes}")
        if not 0.0 <= self.transmittance <= 1.0:
            raise ConfigError(f"invalid transmittance {self.transmittance} (must lie in [0, 1])")
        if self.convention not in CONVENTIONS:
            raise ConfigError(f"unknown beam-splitter convention {self.convention!r}")
        if self.outputs is not None and len(self.outputs) != 2:
            raise ConfigError(f"a beam splitter has two outputs, got {self.outputs}")

    def block(self) -> np.ndarray:
        t = np.sqrt(self.transmittance)
        r = np.sqrt(1.0 - self.transmittance)
        if self.convention == STANDARD:
            return np.array([[t, r], [-r, t]])
        return np.array([[t, -r], [r, t]])


@dataclass(frozen=True)
class NetworkSpec:
    native_modes: tuple
    beam_splitters: tuple = ()
    ancillas: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "native_modes", tuple(self.native_modes))
        object.__setattr__(self, "beam_splitters", tuple(self.beam_splitters))
        object.__setattr__(self, "ancillas", tuple(self.ancillas))

    @classmethod
    def from_records(cls, native_modes: tuple, records: list) -> "NetworkSpec":
        """Build from scenario entries ``{"bs": [x, y], "T": 0.75, "out": [o1, o2]}``."""
        splitters = []
        for idx, rec in enumerate(records):
            unknown = set(rec) - {"bs", "T", "out", "convention"}
            if unknown or "bs" not in rec or "T" not in rec:
                raise ConfigError(f"network entry {idx} is malformed: {rec}")
            splitters.append(
                BeamSplitter(
                    modes=tuple(rec["bs"]),
                    transmittance=float(rec["T"]),
                    outputs=tuple(rec["out"]) if rec.get("out") else None,
                    convention=rec.get("convention", STANDARD),
                )
            )
        return cls(native_modes, tuple(splitters))

    def with_convention(self, convention: str) -> "NetworkSpec":
        return replace(
            self,
            beam_splitters=tuple(replace(bs, convention=convention) for bs in self.beam_splitters),
        )


@dataclass(frozen=True)
class CompiledNetwork:
    """The linear map plus the wire bookkeeping the direct oracle needs."""

    mapping: LinearModeMap
    steps: tuple  # ((x_wire, y_wire, bs, o1, o2), ...) with ancilla labels resolved
    ancillas: tuple

    @property
    def outputs(self) -> tuple:
        return self.mapping.outputs


def _fresh_ancilla(taken: set) -> str:
    n = 1
    while f"v{n}" in taken:
        n += 1
    return f"v{n}"


def compile_steps(spec: NetworkSpec) -> CompiledNetwork:
    wires: list = list(spec.native_modes)
    rows: dict = {m: {m: 1.0 + 0j} for m in spec.native_modes}
    taken = set(spec.native_modes) | set(spec.ancillas)
    used_ancillas: list = []
    steps = []

    for bs in spec.beam_splitters:
        x, y = bs.modes
        if x not in rows:
            raise ConfigError(f"beam splitter references unknown mode {x!r}")
        if y in VACUUM_TOKENS or (y in spec.ancillas and y not in used_ancillas):
            if y in VACUUM_TOKENS:
                y = _fresh_ancilla(taken)
                taken.add(y)
            used_ancillas.append(y)
            rows[y] = {y: 1.0 + 0j}
        elif y not in rows:
            raise ConfigError(f"beam splitter references unknown mode {y!r}")
        if x == y:
            raise ConfigError(f"beam splitter mixes mode {x!r} with itself")

        o1, o2 = bs.outputs or (x, y)
        clash = {o1, o2} & (set(rows) - {x, y})
        if clash or o1 == o2:
            raise ConfigError(f"beam-splitter output names collide with existing modes: {sorted(clash) or o1}")

        (t11, t12), (t21, t22) = bs.block()
        rx, ry = rows.pop(x), rows.pop(y)
        new_x = {m: t11 * rx.get(m, 0) + t12 * ry.get(m, 0) for m in {**rx, **ry}}
        new_y = {m: t21 * rx.get(m, 0) + t22 * ry.get(m, 0) for m in {**rx, **ry}}
        rows[o1], rows[o2] = new_x, new_y

        pos = wires.index(x)
        wires[pos] = o1
        if y in wires:
            wires[wires.index(y)] = o2
        else:
            wires.insert(pos + 1, o2)
        taken |= {o1, o2}
        steps.append((x, y, bs, o1, o2))

    mapping = LinearModeMap(
        {w: tuple((m, complex(a)) for m, a in sorted(rows[w].items()) if a != 0) for w in wires},
        frozenset(used_ancillas),
    )
    return CompiledNetwork(mapping, tuple(steps), tuple(used_ancillas))


def compile_network(spec: NetworkSpec) -> LinearModeMap:
    """Compose the 2×2 blocks into one unitary map from native + ancilla inputs to outputs."""
    compiled = compile_steps(spec)
    residual = compiled.mapping.unitarity_residual()
    if residual > UNITARITY_TOL:
        raise NumericalError(f"compiled network is not unitary (residual {residual:.2e})")
    logger.debug(
        "Compiled %d beam splitter(s): outputs %s, ancillas %s",
        len(spec.beam_splitters), compiled.outputs, compiled.ancillas,
    )
    return compiled.mapping
