"""
Verification mode: oracle agreement, cutoff closure and convergence,
physicality invariants and beam-splitter convention independence, each
reported as a pass/fail check instead of raising.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from config import N_JOBS, VERIFY_PARAMS
from src.criteria import uncertainty_check
from src.fock import MIRRORED, STANDARD, QUANTUM
from src.network import DirectOracle, PushforwardEvaluator, compile_network
from src.utils.errors import HOCMError
from src.utils.logger import get_logger
from .scenario import ScenarioConfig
from .sweep import ScanContext, run_scan

logger = get_logger("hocm.scan.verify")

ORACLE_TOL = VERIFY_PARAMS["oracle_tol"]
CONVERGENCE_SHIFT = VERIFY_PARAMS["convergence_shift"]
MANLEY_ROWE_TOL = VERIFY_PARAMS["manley_rowe_tol"]
UNITARITY_TOL = VERIFY_PARAMS["unitarity_tol"]
CONVENTION_TOL = VERIFY_PARAMS["convention_tol"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    worst: float | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "worst": self.worst}


@dataclass
class VerificationReport:
    scenario: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: CheckResult) -> None:
        level = "info" if check.passed else "warning"
        getattr(logger, level)("[%s] %s: %s", "PASS" if check.passed else "FAIL", check.name, check.detail)
        self.checks.append(check)

    def to_dict(self) -> dict:
        return {"scenario": self.scenario, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _sample_xis(config: ScenarioConfig, count: int) -> list:
    grid = config.grid()
    if len(grid) <= count:
        return [float(x) for x in grid]
    picks = np.linspace(0, len(grid) - 1, count + 1)[1:].round().astype(int)
    return [float(grid[i]) for i in picks]


def _scaled_gap(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(a)))))


def check_oracle(config: ScenarioConfig, xis: list) -> CheckResult:
    """Every HOCM entry through the pushforward vs. the direct multimode unitary, at reduced cutoffs."""
    reduced = config.reduced()
    ctx = ScanContext(reduced)
    worst = 0.0
    for xi in xis:
        psi = ctx.state_at(xi)
        oracle = DirectOracle(psi, reduced.network)
        fast = PushforwardEvaluator(psi, ctx.projectors[0])
        for plan in ctx.plans[: len(reduced.vectors)]:
            a, b = plan.build(fast), plan.build(oracle)
            for x, y in ((a.V, b.V), (a.Omega, b.Omega), (a.means, b.means)):
                worst = max(worst, _scaled_gap(x, y))
    return CheckResult(
        "oracle_agreement",
        worst <= ORACLE_TOL,
        f"max scaled |pushforward − direct| = {worst:.2e} over {len(xis)} xi value(s) at cutoffs {reduced.cutoffs}",
        worst,
    )


def check_cutoff_closure(config: ScenarioConfig, xis: list) -> CheckResult:
    """Boundary leakage at the scenario's own cutoffs, below the flag threshold."""
    ctx = ScanContext(config)
    worst = max(ctx.state_at(xi).meta["leakage"] for xi in xis)
    closed = config.hamiltonian.closes(config.cutoffs)
    detail = f"max boundary leakage {worst:.2e} over {len(xis)} xi value(s) at cutoffs {config.cutoffs}"
    if closed:
        detail += " (closed photon-number sectors)"
    return CheckResult("cutoff_closure", worst <= config.tolerances["leakage"], detail, worst)


def check_convergence(config: ScenarioConfig, n_jobs: int = N_JOBS) -> CheckResult:
    """Thresholds of the primary curves must move by less than 0.01 when the cutoffs double."""
    base = run_scan(config, n_jobs=n_jobs)
    doubled = run_scan(config.doubled(), n_jobs=n_jobs)
    primary = {(r.vector, r.bipartition) for r in base.rows if r.primary or r.reference}
    before = {(t.vector, t.bipartition): t.crossings for t in base.thresholds}
    after = {(t.vector, t.bipartition): t.crossings for t in doubled.thresholds}

    worst, problems = 0.0, []
    for key in sorted(primary):
        c0, c1 = before.get(key, ()), after.get(key, ())
        if len(c0) != len(c1):
            problems.append(f"{key[0]} {key[1]}: {len(c0)} vs {len(c1)} crossing(s)")
            continue
        for x, y in zip(c0, c1):
            worst = max(worst, abs(x.xi - y.xi))
    passed = not problems and worst < CONVERGENCE_SHIFT
    detail = f"max threshold shift {worst:.4f} with cutoffs {config.cutoffs} → {config.doubled().cutoffs}"
    if problems:
        detail += "; " + "; ".join(problems)
    return CheckResult("cutoff_convergence", passed, detail, worst)


def _manley_rowe(psi, k: int, l: int, quantum: bool) -> tuple:
    na, nb = psi.photon_number("a"), psi.photon_number("b")
    values = [l * na - k * nb]
    if quantum:
        np_ = psi.photon_number("p")
        values += [na + k * np_, nb + l * np_]
    return tuple(values)


def check_invariants(config: ScenarioConfig, xis: list) -> list:
    """Uncertainty principle, zero local moments, Manley–Rowe and network unitarity."""
    ctx = ScanContext(config)
    ham = config.hamiltonian
    quantum = ham.pump == QUANTUM
    start = _manley_rowe(ctx.psi0, ham.k, ham.l, quantum)

    worst_eq2, worst_mean, worst_mr = 0.0, 0.0, 0.0
    for xi in xis:
        psi = ctx.state_at(xi)
        sources = [PushforwardEvaluator(psi, p) for p in ctx.projectors]
        for idx, plan in enumerate(ctx.plans):
            bundle = plan.build(sources[ctx.projector_of[idx]])
            scale = max(1.0, float(np.linalg.norm(bundle.uncertainty_matrix(), 2)))
            worst_eq2 = min(worst_eq2, uncertainty_check(bundle) / scale)
            worst_mean = max(worst_mean, float(np.max(np.abs(bundle.means))))
        now = _manley_rowe(psi, ham.k, ham.l, quantum)
        worst_mr = max(worst_mr, max(abs(x - y) for x, y in zip(now, start)))

    residual = compile_network(config.network).unitarity_residual()
    tol = config.tolerances["entanglement"]
    return [
        CheckResult(
            "uncertainty_principle", worst_eq2 >= -tol,
            f"min eig(V + iΩ/2)/‖·‖ = {worst_eq2:.2e} over {len(xis)} xi value(s)", worst_eq2,
        ),
        CheckResult(
            "zero_local_moments", worst_mean < tol,
            f"max |<R_i>| = {worst_mean:.2e}", worst_mean,
        ),
        CheckResult(
            "manley_rowe", worst_mr < MANLEY_ROWE_TOL,
            f"max drift of conserved photon combinations = {worst_mr:.2e}", worst_mr,
        ),
        CheckResult(
            "network_unitarity", residual < UNITARITY_TOL,
            f"‖UU† − 1‖ = {residual:.2e}", residual,
        ),
    ]


def check_conventions(config: ScenarioConfig, xis: list) -> CheckResult:
    """ν must not depend on the sign convention of the reflected beam-splitter arm."""
    contexts = [ScanContext(config.with_convention(c)) for c in (STANDARD, MIRRORED)]
    worst = 0.0
    for xi in xis:
        psi = contexts[0].state_at(xi)
        rows_a, rows_b = (ctx.evaluate(xi, psi=psi) for ctx in contexts)
        for ra, rb in zip(rows_a, rows_b):
            worst = max(worst, abs(ra.nu_min - rb.nu_min) / max(1.0, abs(ra.nu_min)))
    return CheckResult(
        "convention_independence", worst <= CONVENTION_TOL,
        f"max scaled |ν_standard − ν_mirrored| = {worst:.2e}", worst,
    )


def verify(config: ScenarioConfig, fast: bool = False, n_jobs: int = N_JOBS) -> VerificationReport:
    report = VerificationReport(config.name)
    base = config.reduced() if fast else config
    xis = _sample_xis(base, VERIFY_PARAMS["fast_xis"] if fast else VERIFY_PARAMS["full_xis"])

    steps = [
        ("oracle_agreement", lambda: [check_oracle(config, xis)]),
        ("invariants", lambda: check_invariants(base, xis)),
        ("convention_independence", lambda: [check_conventions(base, xis)]),
        ("cutoff_closure", lambda: [check_cutoff_closure(config, xis)]),
    ]
    # convergence only at full cutoffs
    if not fast:
        steps.append(("cutoff_convergence", lambda: [check_convergence(config, n_jobs)]))
    for name, run in steps:
        try:
            for check in run():
                report.add(check)
        except HOCMError as exc:
            report.add(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    logger.info("Verification of %s: %s", config.name, "PASSED" if report.passed else "FAILED")
    return report


def flagged_checks(config: ScenarioConfig, n_jobs: int = N_JOBS) -> VerificationReport | None:
    """Run the checks a scenario's ``flags`` section switches on; ``None`` when none are set."""
    flags = config.flags
    if not any(flags.values()):
        return None
    report = VerificationReport(config.name)
    xis = _sample_xis(config, 3)
    steps = []
    if flags.get("oracle_check"):
        steps.append(("oracle_agreement", lambda: [check_oracle(config, xis)]))
    if flags.get("both_conventions"):
        steps.append(("convention_independence", lambda: [check_conventions(config, xis)]))
    if flags.get("convergence_check"):
        steps.append(("cutoff_convergence", lambda: [check_convergence(config, n_jobs)]))
    for name, run in steps:
        try:
            for check in run():
                report.add(check)
        except HOCMError as exc:
            report.add(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return report
