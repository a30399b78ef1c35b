"""ξ sweeps, threshold bisection, output files, verification and the CLI."""
import json
import logging
from dataclasses import replace

import numpy as np
import pandas as pd
import pytest

import dump_state
import run_scan as cli
from src.criteria import ENTANGLED, IFF_1XN, SEPARABLE
from src.fock import StateVector, required_pump_cutoff
from src.scan import (
    TOWARD_ENTANGLED,
    ScanContext,
    ScenarioConfig,
    emit,
    entangled_intervals,
    flagged_checks,
    full_inseparability,
    nu_series,
    run_scan,
    verify,
)
from src.scan.emit import ROW_COLUMNS, THRESHOLD_COLUMNS
from src.scan.sweep import ScanResult
from src.scan.verify import check_cutoff_closure
from src.utils.errors import EvolutionError, HOCMError
from src.utils.logger import get_logger, set_level

RI2 = "Q{1 a1}; P{1 a1}; Q{1 a2, 1 b1}; P{1 a2, 1 b1}; Q{1 b2}; P{1 b2}"
R12 = "Q{1 a1}; P{1 a1}; Q{1 a2}; P{1 a2}; Q{2 b1}; P{2 b1}; Q{2 b2}; P{2 b2}"
SPLIT = [
    {"bs": ["a", "vac"], "T": 0.75, "out": ["a1", "a2"]},
    {"bs": ["b", "vac"], "T": 0.75, "out": ["b1", "b2"]},
]


@pytest.fixture
def tmsv_result(small_scenario_dict):
    return run_scan(ScenarioConfig.from_dict(small_scenario_dict), n_jobs=1)


def test_scan_rows(tmsv_result):
    rows = tmsv_result.rows
    assert [r.xi for r in rows] == [0.0, 0.1, 0.2]
    assert {(r.vector, r.bipartition, r.order) for r in rows} == {("R11", "a|b", 2)}
    assert rows[0].verdict == SEPARABLE
    assert rows[0].sufficiency_class == IFF_1XN
    assert rows[1].nu_min == pytest.approx((np.exp(-0.2) - 1) / 4, rel=1e-6)
    assert rows[2].nu_min < rows[1].nu_min < 0
    assert all(r.verdict == ENTANGLED for r in rows[1:])
    assert not any(r.leakage_flag for r in rows)


def test_threshold_bisection(tmsv_result):
    (report,) = tmsv_result.thresholds
    assert (report.vector, report.bipartition) == ("R11", "a|b")
    (crossing,) = report.crossings
    assert crossing.direction == TOWARD_ENTANGLED
    assert 0.0 <= crossing.xi < 1e-3
    assert crossing.upper - crossing.lower < 1e-3


def test_row_summaries(tmsv_result):
    rows = tmsv_result.rows
    assert entangled_intervals(rows) == {("R11", "a|b"): [(0.1, 0.2)]}
    assert full_inseparability(rows) == {0.0: False, 0.1: True, 0.2: True}
    xs, nus = nu_series(rows, "R11", "a|b")
    np.testing.assert_array_equal(xs, [0.0, 0.1, 0.2])
    assert nus[0] == pytest.approx(0.0, abs=1e-12)


def test_emit_files(tmp_path, tmsv_result):
    written = emit(tmsv_result, tmp_path, ("csv", "json", "svg"))
    assert {p.name for p in written} == {"tmsv.csv", "tmsv.json", "tmsv.svg", "tmsv_thresholds.csv"}

    header = (tmp_path / "tmsv.csv").read_text().splitlines()[0]
    assert header == "xi,vector,order,bipartition,nu_min,class,verdict,leakage_flag"
    df = pd.read_csv(tmp_path / "tmsv.csv")
    assert list(df.columns) == ROW_COLUMNS
    assert len(df) == 3
    thresholds = pd.read_csv(tmp_path / "tmsv_thresholds.csv")
    assert list(thresholds.columns) == THRESHOLD_COLUMNS
    assert len(thresholds) == 1

    records = json.loads((tmp_path / "tmsv.json").read_text())
    assert [r["xi"] for r in records] == [0.0, 0.1, 0.2]
    assert all(r["primary"] is False for r in records)
    assert (tmp_path / "tmsv.svg").read_text().lstrip().startswith("<?xml")


def test_emit_is_byte_stable(tmp_path, tmsv_result):
    emit(tmsv_result, tmp_path / "first", ("csv", "svg"))
    emit(tmsv_result, tmp_path / "second", ("csv", "svg"))
    for name in ("tmsv.csv", "tmsv_thresholds.csv", "tmsv.svg"):
        assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()


def test_emit_without_rows(tmp_path):
    with pytest.raises(HOCMError, match="no rows"):
        emit(ScanResult("empty", [], []), tmp_path)


def test_locality_filters_targets():
    config = ScenarioConfig.from_dict({
        "name": "ri2",
        "hamiltonian": {"k": 1, "l": 2, "pump": "classical", "alpha_p": 1.0},
        "cutoffs": {"a": 6, "b": 6},
        "network": SPLIT,
        "vectors": [{"name": "RI2", "spec": RI2, "primary": ["b2|a1a2b1"]}],
    })
    ctx = ScanContext(config)
    assert [t.bipartition.label for t in ctx.targets] == ["a1|a2b1b2", "b2|a1a2b1", "a1b2|a2b1"]
    assert [t.primary for t in ctx.targets] == [False, True, False]
    assert len(ctx.skipped) == 4
    assert all(name == "RI2" for name, _, _ in ctx.skipped)

    rows = ctx.evaluate(0.1)
    assert [r.bipartition for r in rows] == ["a1|a2b1b2", "b2|a1a2b1", "a1b2|a2b1"]
    assert all(r.order == 3 for r in rows)


def test_unmixed_network_leaves_product_cut_separable():
    """With T = 1 the ancilla outputs stay in vacuum, so a1b1|a2b2 is a product cut."""
    config = ScenarioConfig.from_dict({
        "name": "unmixed",
        "hamiltonian": {"k": 1, "l": 2, "pump": "classical", "alpha_p": 1.0},
        "cutoffs": {"a": 6, "b": 6},
        "network": [
            {"bs": ["a", "vac"], "T": 1.0, "out": ["a1", "a2"]},
            {"bs": ["b", "vac"], "T": 1.0, "out": ["b1", "b2"]},
        ],
        "vectors": [{"name": "R12", "spec": R12}],
        "bipartitions": ["a1b1|a2b2", "a2|a1b1b2", "b2|a1a2b1"],
    })
    rows = ScanContext(config).evaluate(0.1)
    assert len(rows) == 3
    for row in rows:
        assert row.nu_min >= -1e-8, row
        assert row.verdict != ENTANGLED


def test_leaky_cutoffs_abort_unless_relaxed():
    n_p = required_pump_cutoff(1.0)
    config = ScenarioConfig.from_dict({
        "name": "leaky",
        "hamiltonian": {"k": 1, "l": 2, "pump": "quantum", "alpha_p": 1.0},
        "cutoffs": {"a": 2, "b": 2, "p": n_p},
        "network": [],
        "vectors": [{"name": "R11", "spec": "Q{1 a}; P{1 a}; Q{1 b}; P{1 b}"}],
    })
    with pytest.raises(EvolutionError, match="abort limit"):
        ScanContext(config).state_at(1.4)

    relaxed = replace(config, tolerances={**config.tolerances, "leakage_abort": 1.0})
    rows = ScanContext(relaxed).evaluate(1.4)
    assert rows and all(r.leakage_flag for r in rows)

    closed = config.with_cutoffs(config.hamiltonian.closed_cutoffs(n_p))
    check = check_cutoff_closure(closed, [0.7, 1.4])
    assert check.passed, check.detail
    assert "closed photon-number sectors" in check.detail


def test_fast_verification_passes(small_scenario_dict):
    report = verify(ScenarioConfig.from_dict(small_scenario_dict), fast=True, n_jobs=1)
    assert report.passed, report.to_dict()
    names = [c.name for c in report.checks]
    assert "oracle_agreement" in names and "manley_rowe" in names
    assert "cutoff_closure" in names and "cutoff_convergence" not in names


def test_flagged_checks(small_scenario_dict):
    assert flagged_checks(ScenarioConfig.from_dict(small_scenario_dict)) is None
    flagged = ScenarioConfig.from_dict({**small_scenario_dict, "flags": {"oracle_check": True}})
    report = flagged_checks(flagged, n_jobs=1)
    assert [c.name for c in report.checks] == ["oracle_agreement"]
    assert report.passed


def test_cli_list_builtins(capsys):
    assert cli.main(["list-builtins"]) == cli.EXIT_OK
    assert "split-r12" in capsys.readouterr().out


def test_cli_list_builtins_shows_aliases(capsys):
    assert cli.main(["list-builtins"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "[fig2b]" in out and "[original2mode]" in out


def test_cli_unknown_builtin():
    assert cli.main(["scan", "--builtin", "nope"]) == cli.EXIT_CONFIG


def test_cli_missing_config(tmp_path):
    assert cli.main(["simulate", "--config", str(tmp_path / "none.json")]) == cli.EXIT_CONFIG


def test_cli_simulate(tmp_path, small_scenario_dict):
    path = tmp_path / "tmsv.json"
    path.write_text(json.dumps(small_scenario_dict), encoding="utf-8")
    out = tmp_path / "out"
    code = cli.main(["--n-jobs", "1", "simulate", "--config", str(path), "--out", str(out), "--format", "json"])
    assert code == cli.EXIT_OK
    assert (out / "tmsv.json").exists()
    assert (out / "tmsv_thresholds.csv").exists()
    assert not (out / "tmsv.csv").exists()


def test_cli_log_level_reaches_child_loggers():
    try:
        assert cli.main(["--log-level", "debug", "list-builtins"]) == cli.EXIT_OK
        assert get_logger("hocm.scan").getEffectiveLevel() == logging.DEBUG
    finally:
        set_level(logging.INFO)
    assert get_logger("hocm.scan").getEffectiveLevel() == logging.INFO


def test_dump_state(tmp_path, small_scenario_dict):
    path = tmp_path / "tmsv.json"
    path.write_text(json.dumps(small_scenario_dict), encoding="utf-8")
    assert dump_state.main(["--config", str(path), "--xi", "0.1", "--out", str(tmp_path)]) == 0
    psi = StateVector.load(tmp_path / "tmsv_xi0.1000.fock", ("a", "b"))
    assert psi.norm() == pytest.approx(1.0, abs=1e-9)
    assert psi.photon_number("a") == pytest.approx(np.sinh(0.1) ** 2, rel=1e-6)
    assert dump_state.main(["--builtin", "nope", "--xi", "0.1", "--out", str(tmp_path)]) == 2


def test_dump_state_accepts_panel_alias(tmp_path):
    assert dump_state.main(["--builtin", "fig2b", "--xi", "0.0", "--reduced", "--out", str(tmp_path)]) == 0
    assert [p.name for p in tmp_path.glob("*.fock")] == ["split-r12_xi0.0000.fock"]
