"""
Scenario configuration: JSON files and the builtin reproduction scenarios.

Field names (all optional except ``name`` and ``vectors``)::

    name, hamiltonian{k, l, pump, alpha_p}, cutoffs{a, b, p}, native_modes,
    network[{bs: [x, y], T, out?: [o1, o2], convention?}],
    vectors[{name, spec, order?, primary?}], reference[{name, spec, order?}],
    bipartitions ("all" | [labels]), xi{start, stop, step}, tolerances{...},
    flags{oracle_check, convergence_check, both_conventions},
    allow_high_degree, outputs[csv|json|svg]
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from config import (
    DEFAULT_CUTOFFS,
    HAMILTONIAN_PARAMS,
    NATIVE_MODES,
    PUMP_MODE,
    REDUCED_CUTOFFS,
    REDUCED_LEAKAGE_ABORT,
    TOLERANCES,
    TRANSMITTANCE,
    XI_RANGE,
    xi_grid,
)
from src.criteria import (
    QuadratureVectorSpec,
    all_bipartitions,
    alternative_collective_vector,
    collective_vectors,
    pairwise_vectors,
    parse_vector,
    resolve_bipartitions,
    standard_vector,
)
from src.fock import QUANTUM, HamiltonianSpec, FockCutoffs, required_pump_cutoff
from src.network import BeamSplitter, NetworkSpec, compile_network
from src.utils.errors import AlgebraError, ConfigError, HOCMError
from src.utils.logger import get_logger

logger = get_logger("hocm.scan.scenario")

FORMATS = ("csv", "json", "svg")
DEFAULT_FLAGS = {"oracle_check": False, "convergence_check": False, "both_conventions": False}

_TOP_KEYS = {
    "name", "hamiltonian", "cutoffs", "native_modes", "network", "vectors", "reference",
    "bipartitions", "xi", "tolerances", "flags", "allow_high_degree", "outputs",
}
_HAM_KEYS = {"k", "l", "pump", "alpha_p"}
_VECTOR_KEYS = {"name", "spec", "order", "primary"}
_XI_KEYS = {"start", "stop", "step"}


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Attributes:
        reference:         vectors on the native (pre-network) modes, evaluated
                           on the same states across the bipartition of the
                           native modes; drawn as reference curves
        allow_high_degree: accept elements above half a cutoff (warns instead)
    """

    name: str
    hamiltonian: HamiltonianSpec
    cutoffs: dict
    network: NetworkSpec
    vectors: tuple
    bipartitions: object = "all"
    xi: dict = field(default_factory=lambda: dict(XI_RANGE))
    tolerances: dict = field(default_factory=lambda: dict(TOLERANCES))
    flags: dict = field(default_factory=lambda: dict(DEFAULT_FLAGS))
    reference: tuple = ()
    allow_high_degree: bool = False
    outputs: tuple = ("csv",)

    def __post_init__(self):
        if not self.vectors:
            raise ConfigError(f"scenario {self.name!r} defines no quadrature vectors")
        names = [v.name for v in self.vectors + self.reference]
        if len(set(names)) != len(names):
            raise ConfigError(f"scenario {self.name!r} repeats a vector name: {names}")
        bad = [f for f in self.outputs if f not in FORMATS]
        if bad:
            raise ConfigError(f"unknown output format(s) {bad} (expected {', '.join(FORMATS)})")
        self.grid()

    # ── derived views ─────────────────────────────────────────
    @property
    def native_modes(self) -> tuple:
        return self.network.native_modes

    @property
    def output_modes(self) -> tuple:
        return compile_network(self.network).outputs

    def grid(self) -> np.ndarray:
        start, stop, step = self.xi["start"], self.xi["stop"], self.xi["step"]
        if stop < start or (stop > start and step <= 0):
            raise ConfigError(f"xi grid start={start}, stop={stop}, step={step} is not increasing")
        if start < 0:
            raise ConfigError(f"xi grid must start at xi >= 0, got {start}")
        return xi_grid(start, stop, step)

    def fock_cutoffs(self) -> FockCutoffs:
        return self.hamiltonian.cutoffs(self.cutoffs)

    def resolved_bipartitions(self) -> tuple:
        return resolve_bipartitions(self.bipartitions, self.output_modes)

    def resolved_vectors(self) -> tuple:
        """Vectors with their moment order filled in from the Hamiltonian."""
        k, l = self.hamiltonian.k, self.hamiltonian.l
        return tuple(v.with_order(v.moment_order(k, l)) for v in self.vectors)

    def resolved_reference(self) -> tuple:
        k, l = self.hamiltonian.k, self.hamiltonian.l
        return tuple(v.with_order(v.moment_order(k, l)) for v in self.reference)

    # ── variants ──────────────────────────────────────────────
    def with_cutoffs(self, cutoffs: dict) -> "ScenarioConfig":
        return replace(self, cutoffs={**self.cutoffs, **cutoffs})

    def reduced(self) -> "ScenarioConfig":
        """Reduced cutoffs; the pump cutoff is raised to what the pump tail allows.

        The reduced state is truncated on purpose, so boundary leakage only
        flags rows (``REDUCED_LEAKAGE_ABORT``) instead of failing the point.
        """
        cutoffs = dict(REDUCED_CUTOFFS)
        if self.hamiltonian.pump == QUANTUM:
            needed = required_pump_cutoff(self.hamiltonian.alpha_p, self.tolerances["pump_tail"])
            if needed > cutoffs[PUMP_MODE]:
                logger.debug("Reduced pump cutoff raised %d → %d", cutoffs[PUMP_MODE], needed)
                cutoffs[PUMP_MODE] = needed
        tolerances = {**self.tolerances, "leakage_abort": REDUCED_LEAKAGE_ABORT}
        return replace(self.with_cutoffs(cutoffs), tolerances=tolerances)

    def doubled(self) -> "ScenarioConfig":
        """Every down-conversion cutoff doubled; the pump cutoff is already tail-limited."""
        return self.with_cutoffs({m: 2 * self.cutoffs[m] for m in NATIVE_MODES})

    def with_convention(self, convention: str) -> "ScenarioConfig":
        return replace(self, network=self.network.with_convention(convention))

    def with_grid(self, **xi) -> "ScenarioConfig":
        unknown = set(xi) - _XI_KEYS
        if unknown:
            raise ConfigError(f"unknown xi grid field(s) {sorted(unknown)}")
        return replace(self, xi={**self.xi, **{k: float(v) for k, v in xi.items() if v is not None}})

    # ── (de)serialisation ─────────────────────────────────────
    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "hamiltonian": {
                "k": self.hamiltonian.k,
                "l": self.hamiltonian.l,
                "pump": self.hamiltonian.pump,
                "alpha_p": self.hamiltonian.alpha_p,
            },
            "cutoffs": dict(self.cutoffs),
            "native_modes": list(self.native_modes),
            "network": [
                {
                    "bs": list(bs.modes),
                    "T": bs.transmittance,
                    **({"out": list(bs.outputs)} if bs.outputs else {}),
                    "convention": bs.convention,
                }
                for bs in self.network.beam_splitters
            ],
            "vectors": [_vector_record(v) for v in self.vectors],
            "reference": [_vector_record(v) for v in self.reference],
            "bipartitions": self.bipartitions if isinstance(self.bipartitions, str) else list(self.bipartitions),
            "xi": dict(self.xi),
            "tolerances": dict(self.tolerances),
            "flags": dict(self.flags),
            "allow_high_degree": self.allow_high_degree,
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ConfigError("scenario must be a JSON object")
        _reject_unknown("scenario", data, _TOP_KEYS)
        if "name" not in data or "vectors" not in data:
            raise ConfigError("scenario needs at least 'name' and 'vectors'")

        ham = {**HAMILTONIAN_PARAMS, **data.get("hamiltonian", {})}
        _reject_unknown("hamiltonian", ham, _HAM_KEYS)
        try:
            hamiltonian = HamiltonianSpec(
                k=int(ham["k"]), l=int(ham["l"]), alpha_p=float(ham["alpha_p"]), pump=str(ham["pump"]).lower()
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, HOCMError):
                raise
            raise ConfigError(f"invalid hamiltonian section: {exc}") from exc

        cutoffs = {**DEFAULT_CUTOFFS, **data.get("cutoffs", {})}
        _reject_unknown("cutoffs", cutoffs, set(hamiltonian.modes) | {PUMP_MODE})
        native = tuple(data.get("native_modes", NATIVE_MODES))
        network = NetworkSpec.from_records(native, data.get("network", []))

        xi = {**XI_RANGE, **data.get("xi", {})}
        _reject_unknown("xi", xi, _XI_KEYS)
        tolerances = {**TOLERANCES, **data.get("tolerances", {})}
        _reject_unknown("tolerances", tolerances, set(TOLERANCES))
        flags = {**DEFAULT_FLAGS, **data.get("flags", {})}
        _reject_unknown("flags", flags, set(DEFAULT_FLAGS))

        try:
            vectors = tuple(_parse_vector_record(r) for r in data["vectors"])
            reference = tuple(_parse_vector_record(r) for r in data.get("reference", []))
        except AlgebraError as exc:
            raise ConfigError(f"invalid quadrature vector: {exc}") from exc

        return cls(
            name=str(data["name"]),
            hamiltonian=hamiltonian,
            cutoffs={k: int(v) for k, v in cutoffs.items() if k in hamiltonian.modes},
            network=network,
            vectors=vectors,
            bipartitions=data.get("bipartitions", "all"),
            xi={k: float(v) for k, v in xi.items()},
            tolerances={k: float(v) for k, v in tolerances.items()},
            flags={k: bool(v) for k, v in flags.items()},
            reference=reference,
            allow_high_degree=bool(data.get("allow_high_degree", False)),
            outputs=tuple(data.get("outputs", ("csv",))),
        )

    @classmethod
    def load(cls, path: Path) -> "ScenarioConfig":
        path = Path(path)
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"scenario file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_dict(data)


def _reject_unknown(section: str, data: dict, allowed: set) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {section}: {', '.join(sorted(unknown))}")


def _vector_record(v: QuadratureVectorSpec) -> dict:
    record = {"name": v.name, "spec": v.text}
    if v.order is not None:
        record["order"] = v.order
    if v.primary:
        record["primary"] = list(v.primary)
    return record


def _parse_vector_record(record: dict) -> QuadratureVectorSpec:
    if not isinstance(record, dict):
        raise ConfigError(f"vector entry must be an object, got {record!r}")
    _reject_unknown("vector", record, _VECTOR_KEYS)
    if "name" not in record or "spec" not in record:
        raise ConfigError(f"vector entry needs 'name' and 'spec': {record}")
    order = record.get("order")
    return parse_vector(
        record["spec"],
        name=str(record["name"]),
        order=int(order) if order is not None else None,
        primary=tuple(record.get("primary", ())),
    )


# ──────────────────────────────────────────────
# Builtins
# ──────────────────────────────────────────────

SPLIT_OUTPUTS = ("a1", "a2", "b1", "b2")


def split_network(transmittance: float = TRANSMITTANCE) -> NetworkSpec:
    """Each down-conversion mode split with a vacuum ancilla on its own beam splitter."""
    return NetworkSpec(
        NATIVE_MODES,
        (
            BeamSplitter(("a", "vac"), transmittance, ("a1", "a2")),
            BeamSplitter(("b", "vac"), transmittance, ("b1", "b2")),
        ),
    )


def _base(name: str, vectors: tuple, reference: tuple = (), network: NetworkSpec | None = None) -> ScenarioConfig:
    ham = HamiltonianSpec(k=1, l=2, alpha_p=HAMILTONIAN_PARAMS["alpha_p"], pump=HAMILTONIAN_PARAMS["pump"])
    cutoffs = dict(DEFAULT_CUTOFFS)
    if ham.pump == QUANTUM:
        closed = ham.closed_cutoffs(cutoffs[PUMP_MODE])
        cutoffs = {m: max(n, closed[m]) for m, n in cutoffs.items()}
    return ScenarioConfig(
        name=name,
        hamiltonian=ham,
        cutoffs=cutoffs,
        network=network if network is not None else split_network(),
        vectors=vectors,
        reference=reference,
        outputs=("csv", "svg"),
    )


def _two_mode_vector(s: int = 1) -> QuadratureVectorSpec:
    return standard_vector(("a",), ("b",), 1, 2, s=s, name="R12_ab", primary=("a|b",))


def _all_split_labels() -> tuple:
    return tuple(b.label for b in all_bipartitions(SPLIT_OUTPUTS))


def _split_r12() -> ScenarioConfig:
    vector = standard_vector(("a1", "a2"), ("b1", "b2"), 1, 2, primary=_all_split_labels())
    return _base("split-r12", (vector,), (_two_mode_vector(),))


def _split_r12_s2() -> ScenarioConfig:
    vector = standard_vector(("a1", "a2"), ("b1", "b2"), 1, 2, s=2, primary=_all_split_labels())
    return _base("split-r12-s2", (vector,), (_two_mode_vector(2),))


def _pairwise() -> ScenarioConfig:
    return _base("pairwise", pairwise_vectors(), (_two_mode_vector(),))


def _pairwise_s2() -> ScenarioConfig:
    return _base("pairwise-s2", tuple(v.lift(2) for v in pairwise_vectors()), (_two_mode_vector(2),))


def _collective() -> ScenarioConfig:
    return _base("collective", collective_vectors())


def _collective_alt() -> ScenarioConfig:
    return _base("collective-alt", (alternative_collective_vector(),))


def _two_mode() -> ScenarioConfig:
    return _base(
        "two-mode",
        (_two_mode_vector(), _two_mode_vector(2)),
        network=NetworkSpec(NATIVE_MODES),
    )


BUILTINS = {
    "split-r12": (_split_r12, "R12 (3rd order) on a1, a2, b1, b2; all 7 bipartitions"),
    "split-r12-s2": (_split_r12_s2, "R12 lifted to s=2 (6th order); all 7 bipartitions"),
    "pairwise": (_pairwise, "RI1..RI3 (3rd order) fusing two outputs into one local mode"),
    "pairwise-s2": (_pairwise_s2, "RI1..RI3 lifted to s=2 (6th order)"),
    "collective": (_collective, "RII1..RII7 (6th order), one vector per bipartition"),
    "collective-alt": (_collective_alt, "RII8 (6th order) on a1|a2b1b2"),
    "two-mode": (_two_mode, "native modes a|b before the network, 3rd and 6th order"),
}


ALIASES = {
    "fig2b": "split-r12",
    "fig2c": "split-r12-s2",
    "fig2d": "pairwise",
    "fig2e": "pairwise-s2",
    "fig2f": "collective",
    "fig2f-alt": "collective-alt",
    "original2mode": "two-mode",
}


def builtin_scenario(name: str) -> ScenarioConfig:
    """Builtin by name or by its panel alias (``fig2b`` etc.)."""
    try:
        factory, _ = BUILTINS[ALIASES.get(name, name)]
    except KeyError:
        raise ConfigError(f"unknown builtin {name!r} (choose from {', '.join(BUILTINS)})") from None
    return factory()


def list_builtins() -> list:
    aliases = {target: alias for alias, target in ALIASES.items()}
    return [(name, f"[{aliases[name]}] {desc}" if name in aliases else desc) for name, (_, desc) in BUILTINS.items()]
