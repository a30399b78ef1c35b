"""Scenario configuration, ξ sweeps, verification and result emission."""
from .scenario import (
    FORMATS,
    ScenarioConfig,
    builtin_scenario,
    list_builtins,
    split_network,
)
from .sweep import (
    TOWARD_ENTANGLED,
    TOWARD_POSITIVE,
    ScanRow,
    Crossing,
    ThresholdReport,
    ScanResult,
    ScanContext,
    run_scan,
    refine_thresholds,
    entangled_intervals,
    full_inseparability,
    nu_series,
)
from .verify import CheckResult, VerificationReport, flagged_checks, verify
from .emit import emit, rows_frame, thresholds_frame, write_report

__all__ = [
    "FORMATS",
    "ScenarioConfig",
    "builtin_scenario",
    "list_builtins",
    "split_network",
    "TOWARD_ENTANGLED",
    "TOWARD_POSITIVE",
    "ScanRow",
    "Crossing",
    "ThresholdReport",
    "ScanResult",
    "ScanContext",
    "run_scan",
    "refine_thresholds",
    "entangled_intervals",
    "full_inseparability",
    "nu_series",
    "CheckResult",
    "VerificationReport",
    "verify",
    "flagged_checks",
    "emit",
    "rows_frame",
    "thresholds_frame",
    "write_report",
]
