import argparse
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from config import N_JOBS, OUTPUT_DIR, logger

from src.scan import (
    FORMATS,
    ScenarioConfig,
    builtin_scenario,
    emit,
    entangled_intervals,
    flagged_checks,
    full_inseparability,
    list_builtins,
    run_scan,
    verify,
    write_report,
)
from src.utils.errors import ConfigError
from src.utils.logger import LEVELS, set_level

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_VERIFY = 3


def _apply_overrides(config: ScenarioConfig, args: argparse.Namespace) -> ScenarioConfig:
    if getattr(args, "reduced", False):
        config = config.reduced()
    grid = {k: getattr(args, f"xi_{k}", None) for k in ("start", "stop", "step")}
    if any(v is not None for v in grid.values()):
        config = config.with_grid(**grid)
    return config


def scan(config: ScenarioConfig, out_dir: Path, formats: tuple, n_jobs: int) -> int:
    logger.info("Scan start: %s", config.name)

    logger.info("[1/3] Evolving %d xi point(s) and evaluating PPT criteria", len(config.grid()))
    try:
        result = run_scan(config, n_jobs=n_jobs)
    except Exception:
        logger.error("[1/3] Sweep failed:\n%s", traceback.format_exc())
        raise

    logger.info("[2/3] Summarising entangled ranges")
    for (vector, bip), intervals in entangled_intervals(result.rows).items():
        ranges = ", ".join(f"[{a:.3f}, {b:.3f}]" for a, b in intervals) or "none"
        logger.info("  %-10s %-12s entangled on %s", vector, bip, ranges)
    for report in result.thresholds:
        for c in report.crossings:
            logger.info("  %-10s %-12s crosses at xi=%.4f (%s)", report.vector, report.bipartition, c.xi, c.direction)
    inseparable = [xi for xi, ok in full_inseparability(result.rows).items() if ok]
    if inseparable:
        logger.info("  every bipartition certified entangled at %d of %d xi point(s)",
                    len(inseparable), len(config.grid()))

    logger.info("[3/3] Writing %s to %s", ", ".join(formats), out_dir)
    try:
        emit(result, out_dir, formats)
    except Exception:
        logger.error("[3/3] Output failed:\n%s", traceback.format_exc())
        raise

    if result.skipped:
        logger.info("%d (vector, bipartition) pair(s) skipped by locality", len(result.skipped))

    report = flagged_checks(config, n_jobs=n_jobs)
    if report is not None:
        write_report(report.to_dict(), out_dir / f"verify_{config.name}.json")
        if not report.passed:
            logger.warning("Scan complete, but flagged checks failed")
            return EXIT_VERIFY
    logger.info("Scan complete")
    return EXIT_OK


def run_verify(config: ScenarioConfig, out_dir: Path, fast: bool, n_jobs: int) -> int:
    logger.info("Verification start: %s (%s)", config.name, "fast" if fast else "full")
    report = verify(config, fast=fast, n_jobs=n_jobs)
    write_report(report.to_dict(), out_dir / f"verify_{config.name}.json")
    failed = [c.name for c in report.checks if not c.passed]
    if failed:
        logger.warning("%d check(s) FAILED: %s", len(failed), ", ".join(failed))
        return EXIT_VERIFY
    logger.info("All %d check(s) passed", len(report.checks))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="run_scan.py",
        description="Higher-order covariance PPT scans of multimode nonlinear bosonic states.",
    )
    parser.add_argument("--n-jobs", type=int, default=N_JOBS, help="worker processes for the xi grid")
    parser.add_argument("--log-level", type=str.upper, choices=LEVELS, help="overrides LOG_LEVEL for this run")
    sub = parser.add_subparsers(dest="command", required=True)

    def grid_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", type=Path, default=OUTPUT_DIR)
        p.add_argument("--format", dest="formats", action="append", choices=FORMATS,
                       help="repeatable; defaults to the scenario's outputs")
        p.add_argument("--reduced", action="store_true", help="use the reduced cutoffs")
        p.add_argument("--xi-start", type=float)
        p.add_argument("--xi-stop", type=float)
        p.add_argument("--xi-step", type=float)

    p_sim = sub.add_parser("simulate", help="run a scenario file")
    p_sim.add_argument("--config", type=Path, required=True)
    grid_args(p_sim)

    p_scan = sub.add_parser("scan", help="run a builtin scenario")
    p_scan.add_argument("--builtin", required=True)
    grid_args(p_scan)

    p_ver = sub.add_parser("verify", help="oracle, convergence, invariant and convention checks")
    p_ver.add_argument("--builtin", required=True)
    p_ver.add_argument("--fast", action="store_true", help="reduced cutoffs and fewer xi values")
    p_ver.add_argument("--out", type=Path, default=OUTPUT_DIR)

    sub.add_parser("list-builtins", help="print the builtin scenario names")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        set_level(args.log_level)
    try:
        if args.command == "list-builtins":
            for name, desc in list_builtins():
                print(f"{name:<14} {desc}")
            return EXIT_OK
        if args.command == "verify":
            return run_verify(builtin_scenario(args.builtin), args.out, args.fast, args.n_jobs)

        config = ScenarioConfig.load(args.config) if args.command == "simulate" else builtin_scenario(args.builtin)
        config = _apply_overrides(config, args)
        formats = tuple(args.formats) if args.formats else config.outputs
        return scan(config, args.out, formats, args.n_jobs)
    except ConfigError as exc:
        logger.error("Configuration error: %s", exc)
        return EXIT_CONFIG
    except Exception:
        logger.error("Run terminated with an unhandled exception:\n%s", traceback.format_exc())
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
