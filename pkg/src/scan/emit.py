"""Byte-stable CSV / JSON / SVG output for scan rows and thresholds."""
from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from src.utils.errors import HOCMError, OutputError  # noqa: E402
from src.utils.logger import get_logger  # noqa: E402

logger = get_logger("hocm.scan.emit")

ROW_COLUMNS = ["xi", "vector", "order", "bipartition", "nu_min", "class", "verdict", "leakage_flag"]
# JSON records also say whether the row is a drawn (primary) curve
RECORD_COLUMNS = ROW_COLUMNS + ["primary"]
THRESHOLD_COLUMNS = ["vector", "bipartition", "crossing_xi", "direction"]
FLOAT_FORMAT = "%.12g"

plt.rcParams["svg.hashsalt"] = "hocm-scan"
plt.rcParams["svg.fonttype"] = "none"


def rows_frame(rows: list) -> pd.DataFrame:
    ordered = sorted(rows, key=lambda r: r.sort_key)
    return pd.DataFrame([r.to_record() for r in ordered], columns=RECORD_COLUMNS)


def thresholds_frame(reports: list) -> pd.DataFrame:
    records = [rec for report in reports for rec in report.records()]
    return pd.DataFrame(records, columns=THRESHOLD_COLUMNS)


def _guard(path: Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create output directory {path.parent}: {exc}") from exc
    return path


def write_csv(df: pd.DataFrame, path: Path) -> Path:
    path = _guard(path)
    try:
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    logger.info("CSV written → %s  (%d rows)", path, len(df))
    return path


def write_json(df: pd.DataFrame, path: Path) -> Path:
    path = _guard(path)
    try:
        df.to_json(path, orient="records", double_precision=12, indent=1)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    logger.info("JSON written → %s  (%d rows)", path, len(df))
    return path


def write_svg(rows: list, path: Path, title: str = "") -> Path:
    """ν(ξ) per (vector, bipartition) with a zero line; primary curves only when any are marked."""
    path = _guard(path)
    df = rows_frame(rows)
    df["reference"] = [r.reference for r in sorted(rows, key=lambda r: r.sort_key)]
    shown = df[df["primary"] | df["reference"]] if df["primary"].any() else df

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (vector, bip), curve in shown.groupby(["vector", "bipartition"], sort=False):
        style = "--" if curve["reference"].iloc[0] else "-"
        ax.plot(curve["xi"], curve["nu_min"], style, linewidth=1.2, label=f"{bip} ({vector})")
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("interaction strength ξ")
    ax.set_ylabel("ν (minimum PPT eigenvalue)")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=7, loc="best")
    fig.tight_layout()
    try:
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    finally:
        plt.close(fig)
    logger.info("SVG written → %s  (%d curve(s))", path, shown.groupby(["vector", "bipartition"]).ngroups)
    return path


def write_report(report: dict, path: Path) -> Path:
    path = _guard(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    logger.info("Report written → %s", path)
    return path


def emit(result, out_dir: Path, formats: tuple = ("csv",), stem: str | None = None) -> list:
    """Write rows in every requested format plus ``<stem>_thresholds.csv``."""
    if not result.rows:
        raise HOCMError(f"scan {result.scenario!r} produced no rows to emit")
    out_dir = Path(out_dir)
    stem = stem or result.scenario
    written = []
    frame = rows_frame(result.rows)
    for fmt in formats:
        if fmt == "csv":
            written.append(write_csv(frame[ROW_COLUMNS], out_dir / f"{stem}.csv"))
        elif fmt == "json":
            written.append(write_json(frame, out_dir / f"{stem}.json"))
        elif fmt == "svg":
            written.append(write_svg(result.rows, out_dir / f"{stem}.svg", title=result.scenario))
        else:
            raise HOCMError(f"unknown output format {fmt!r}")
    written.append(write_csv(thresholds_frame(result.thresholds), out_dir / f"{stem}_thresholds.csv"))
    return written
