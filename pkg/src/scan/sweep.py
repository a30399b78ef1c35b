"""
ξ sweeps: evolve each grid point from the initial state, evaluate every
locality-compatible (vector, bipartition) pair, then bisect each sign change
of ν by re-simulating intermediate ξ values.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from config import N_JOBS
from src.criteria import (
    ENTANGLED,
    HOCMPlan,
    all_bipartitions,
    check_vector_degree,
    ppt_min_eig,
    validate_locality,
)
from src.fock import EvolutionParams, evolve, initial_state
from src.network import NetworkProjector, PushforwardEvaluator, compile_network
from src.algebra import LinearModeMap
from src.utils.errors import CutoffError, EvolutionError
from src.utils.logger import get_logger
from .scenario import ScenarioConfig

logger = get_logger("hocm.scan")

TOWARD_ENTANGLED = "toward_entangled"
TOWARD_POSITIVE = "toward_positive"


@dataclass(frozen=True)
class ScanRow:
    xi: float
    vector: str
    order: int
    bipartition: str
    nu_min: float
    sufficiency_class: str
    verdict: str
    leakage_flag: bool
    primary: bool = False
    reference: bool = False
    vector_index: int = 0
    bipartition_index: int = 0

    @property
    def sort_key(self) -> tuple:
        return (self.xi, self.vector_index, self.bipartition_index)

    def to_record(self) -> dict:
        return {
            "xi": self.xi,
            "vector": self.vector,
            "order": self.order,
            "bipartition": self.bipartition,
            "nu_min": self.nu_min,
            "class": self.sufficiency_class,
            "verdict": self.verdict,
            "leakage_flag": self.leakage_flag,
            "primary": self.primary,
        }


@dataclass(frozen=True)
class Crossing:
    xi: float
    direction: str
    lower: float
    upper: float


@dataclass(frozen=True)
class ThresholdReport:
    vector: str
    bipartition: str
    crossings: tuple = ()

    def records(self) -> list:
        return [
            {"vector": self.vector, "bipartition": self.bipartition, "crossing_xi": c.xi, "direction": c.direction}
            for c in self.crossings
        ]


@dataclass
class ScanResult:
    scenario: str
    rows: list
    thresholds: list
    skipped: list = field(default_factory=list)


@dataclass(frozen=True)
class ScanTarget:
    """One (vector, bipartition) pair that passes locality validation."""

    vector_index: int
    bipartition_index: int
    bipartition: object
    primary: bool
    reference: bool


class ScanContext:
    """Everything a worker needs to evaluate one ξ; picklable for joblib."""

    def __init__(self, config: ScenarioConfig):
        self.config = config
        self.hamiltonian = config.hamiltonian
        self.cutoffs = config.fock_cutoffs()
        self.psi0 = initial_state(self.cutoffs, self.hamiltonian)
        self.tolerances = config.tolerances

        mapping = compile_network(config.network)
        native_map = LinearModeMap.identity(config.native_modes)
        self.vectors = config.resolved_vectors() + config.resolved_reference()
        n_main = len(config.vectors)
        self.projectors = [NetworkProjector(mapping), NetworkProjector(native_map)]
        self.projector_of = [0] * n_main + [1] * (len(self.vectors) - n_main)
        for idx, spec in enumerate(self.vectors):
            used = mapping if idx < n_main else native_map
            check_vector_degree(spec, used, self.cutoffs, config.allow_high_degree)
        self.plans = [HOCMPlan(spec) for spec in self.vectors]

        self.targets, self.skipped = [], []
        main_bips = config.resolved_bipartitions()
        ref_bips = all_bipartitions(config.native_modes) if config.reference else ()
        for v_idx, spec in enumerate(self.vectors):
            reference = v_idx >= n_main
            for b_idx, bip in enumerate(ref_bips if reference else main_bips):
                violations = validate_locality(spec, bip)
                if violations:
                    self.skipped.append((spec.name, bip.label, violations))
                    logger.debug("Skipping %s on %s: %s straddle the cut", spec.name, bip.label, violations)
                    continue
                primary = bip.label in spec.primary
                self.targets.append(ScanTarget(v_idx, b_idx, bip, primary, reference))

    def state_at(self, xi: float):
        params = EvolutionParams(
            tau=self.hamiltonian.tau_for_xi(xi),
            norm_tol=self.tolerances["norm"],
            leakage_threshold=self.tolerances["leakage"],
        )
        psi = evolve(self.psi0, self.hamiltonian, params, xi=xi)
        if psi.meta["leakage"] > self.tolerances["leakage_abort"]:
            raise EvolutionError(
                f"boundary leakage {psi.meta['leakage']:.2e} above abort limit "
                f"{self.tolerances['leakage_abort']:.0e}; raise the cutoffs",
                xi=xi,
            )
        return psi

    def evaluate(self, xi: float, targets: list | None = None, psi=None) -> list:
        targets = self.targets if targets is None else targets
        psi = psi if psi is not None else self.state_at(xi)
        sources = [PushforwardEvaluator(psi, p) for p in self.projectors]
        bundles: dict = {}
        rows = []
        try:
            for target in targets:
                v_idx = target.vector_index
                spec = self.vectors[v_idx]
                if v_idx not in bundles:
                    bundles[v_idx] = self.plans[v_idx].build(
                        sources[self.projector_of[v_idx]],
                        {"xi": xi, "scenario": self.config.name, "order": spec.order},
                    )
                verdict = ppt_min_eig(bundles[v_idx], target.bipartition, self.tolerances["entanglement"])
                rows.append(ScanRow(
                    xi=float(xi),
                    vector=spec.name,
                    order=verdict.order,
                    bipartition=verdict.bipartition,
                    nu_min=verdict.nu_min,
                    sufficiency_class=verdict.sufficiency_class,
                    verdict=verdict.verdict,
                    leakage_flag=bool(psi.meta.get("leakage_flag", False)),
                    primary=target.primary,
                    reference=target.reference,
                    vector_index=v_idx,
                    bipartition_index=target.bipartition_index,
                ))
        except CutoffError as exc:
            raise CutoffError(f"{exc} (xi={xi:.6g})", required=exc.required) from exc
        return rows


def _evaluate_point(ctx: ScanContext, xi: float) -> list:
    rows = ctx.evaluate(xi)
    logger.debug("xi=%.4f: %d row(s)", xi, len(rows))
    return rows


def _series(rows: list) -> dict:
    out: dict = {}
    for row in sorted(rows, key=lambda r: r.sort_key):
        out.setdefault((row.vector_index, row.bipartition_index, row.reference), []).append(row)
    return out


def _bisect_group(ctx: ScanContext, lo: float, hi: float, items: list, precision: float) -> list:
    """
    Refine every bracket sharing the grid interval ``[lo, hi]``.

    Evolved states are shared between the brackets of the group.
    """
    states: dict = {}
    found = []
    for target, entangled_lo in items:
        a, b = lo, hi
        while b - a >= precision:
            mid = round(0.5 * (a + b), 12)
            if mid not in states:
                states[mid] = ctx.state_at(mid)
            (row,) = ctx.evaluate(mid, [target], states[mid])
            if (row.verdict == ENTANGLED) == entangled_lo:
                a = mid
            else:
                b = mid
        direction = TOWARD_POSITIVE if entangled_lo else TOWARD_ENTANGLED
        found.append((target, Crossing(round(0.5 * (a + b), 12), direction, a, b)))
    return found


def refine_thresholds(ctx: ScanContext, rows: list, precision: float, n_jobs: int = N_JOBS) -> list:
    series = _series(rows)
    target_of = {(t.vector_index, t.bipartition_index, t.reference): t for t in ctx.targets}
    groups: dict = {}
    for key, points in series.items():
        for left, right in zip(points, points[1:]):
            if (left.verdict == ENTANGLED) != (right.verdict == ENTANGLED):
                groups.setdefault((left.xi, right.xi), []).append((target_of[key], left.verdict == ENTANGLED))

    results = Parallel(n_jobs=n_jobs)(
        delayed(_bisect_group)(ctx, lo, hi, items, precision) for (lo, hi), items in sorted(groups.items())
    )
    crossings: dict = {key: [] for key in series}
    for group in results:
        for target, crossing in group:
            crossings[(target.vector_index, target.bipartition_index, target.reference)].append(crossing)

    reports = []
    for key in sorted(series):
        first = series[key][0]
        reports.append(ThresholdReport(
            vector=first.vector,
            bipartition=first.bipartition,
            crossings=tuple(sorted(crossings[key], key=lambda c: c.xi)),
        ))
    return reports


def run_scan(config: ScenarioConfig, n_jobs: int = N_JOBS, refine: bool = True) -> ScanResult:
    ctx = ScanContext(config)
    grid = config.grid()
    logger.info(
        "Scanning %s: %d xi point(s), %d (vector, bipartition) pair(s), basis dim %d",
        config.name, len(grid), len(ctx.targets), ctx.cutoffs.dim,
    )
    chunks = Parallel(n_jobs=n_jobs)(delayed(_evaluate_point)(ctx, float(xi)) for xi in grid)
    rows = sorted((row for chunk in chunks for row in chunk), key=lambda r: r.sort_key)

    flagged = sorted({r.xi for r in rows if r.leakage_flag})
    if flagged:
        logger.warning("Boundary leakage flagged at %d xi point(s), first at xi=%.4f", len(flagged), flagged[0])

    thresholds = refine_thresholds(ctx, rows, config.tolerances["xi_precision"], n_jobs) if refine else []
    n_cross = sum(len(t.crossings) for t in thresholds)
    logger.info("Scan %s finished: %d row(s), %d threshold crossing(s)", config.name, len(rows), n_cross)
    return ScanResult(config.name, rows, thresholds, ctx.skipped)


# ──────────────────────────────────────────────
# Row summaries
# ──────────────────────────────────────────────

def entangled_intervals(rows: list) -> dict:
    """Maximal grid ranges ``(ξ_start, ξ_end)`` with verdict entangled, per (vector, bipartition)."""
    out: dict = {}
    for points in _series(rows).values():
        key = (points[0].vector, points[0].bipartition)
        intervals, start, prev = [], None, None
        for row in points:
            if row.verdict == ENTANGLED:
                start = row.xi if start is None else start
            elif start is not None:
                intervals.append((start, prev))
                start = None
            prev = row.xi
        if start is not None:
            intervals.append((start, prev))
        out[key] = intervals
    return out


def full_inseparability(rows: list, bipartitions: tuple | None = None) -> dict:
    """Per ξ: is every bipartition certified entangled by at least one vector?"""
    main = [r for r in rows if not r.reference]
    labels = set(bipartitions) if bipartitions is not None else {r.bipartition for r in main}
    certified: dict = {}
    for row in main:
        hits = certified.setdefault(row.xi, set())
        if row.verdict == ENTANGLED:
            hits.add(row.bipartition)
    return {xi: labels <= hits for xi, hits in sorted(certified.items())}


def nu_series(rows: list, vector: str, bipartition: str) -> tuple:
    """``(ξ array, ν array)`` of one curve, sorted by ξ."""
    picked = sorted((r for r in rows if r.vector == vector and r.bipartition == bipartition), key=lambda r: r.xi)
    return np.array([r.xi for r in picked]), np.array([r.nu_min for r in picked])
