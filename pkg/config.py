from pathlib import Path
import sys

import numpy as np

BASE_DIR = Path(__file__).resolve().parent
sys.path.insert(0, str(BASE_DIR))

from src.utils.config import (
    CUTOFF_A,
    CUTOFF_B,
    CUTOFF_P,
    REDUCED_CUTOFF_A,
    REDUCED_CUTOFF_B,
    REDUCED_CUTOFF_P,
    HAM_K,
    HAM_L,
    PUMP_KIND,
    ALPHA_P,
    TRANSMITTANCE,
    XI_START,
    XI_STOP,
    XI_STEP,
    XI_PRECISION,
    ENTANGLEMENT_TOL,
    HERMITIAN_TOL,
    REALITY_TOL,
    PUMP_TAIL_TOL,
    LEAKAGE_THRESHOLD,
    LEAKAGE_ABORT,
    REDUCED_LEAKAGE_ABORT,
    NORM_TOL,
    PRUNE_TOL,
    ORACLE_TOL,
    CONVERGENCE_SHIFT,
    MANLEY_ROWE_TOL,
    UNITARITY_TOL,
    CONVENTION_TOL,
    FAST_VERIFY_XIS,
    FULL_VERIFY_XIS,
    INTEGRATOR,
    INTEGRATOR_RTOL,
    MAX_BASIS_DIM,
    N_JOBS,
    SEED,
    LOG_LEVEL_STR,
    LOG_TO_FILE,
)
from src.utils.logger import resolve_level, setup_logger

DATA_DIR   = BASE_DIR / "data"
OUTPUT_DIR = DATA_DIR / "output"
CACHE_DIR  = DATA_DIR / "cache"

for _d in [OUTPUT_DIR, CACHE_DIR]:
    _d.mkdir(parents=True, exist_ok=True)

NATIVE_MODES = ("a", "b")
PUMP_MODE    = "p"

DEFAULT_CUTOFFS = {
    "a": CUTOFF_A,
    "b": CUTOFF_B,
    "p": CUTOFF_P,
}

REDUCED_CUTOFFS = {
    "a": REDUCED_CUTOFF_A,
    "b": REDUCED_CUTOFF_B,
    "p": REDUCED_CUTOFF_P,
}

HAMILTONIAN_PARAMS = {
    "k":       HAM_K,
    "l":       HAM_L,
    "pump":    PUMP_KIND,
    "alpha_p": ALPHA_P,
}

XI_RANGE = {
    "start": XI_START,
    "stop":  XI_STOP,
    "step":  XI_STEP,
}


def xi_grid(start: float = XI_START, stop: float = XI_STOP, step: float = XI_STEP) -> np.ndarray:
    """Inclusive, evenly spaced grid; rounding keeps 0.02 * 35 == 0.7 exactly."""
    if step <= 0:
        return np.array([round(start, 12)])
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


XI_GRID = xi_grid()

TOLERANCES = {
    "entanglement":   ENTANGLEMENT_TOL,
    "hermitian":      HERMITIAN_TOL,
    "reality":        REALITY_TOL,
    "pump_tail":      PUMP_TAIL_TOL,
    "leakage":        LEAKAGE_THRESHOLD,
    "leakage_abort":  LEAKAGE_ABORT,
    "norm":           NORM_TOL,
    "prune":          PRUNE_TOL,
    "xi_precision":   XI_PRECISION,
}

VERIFY_PARAMS = {
    "oracle_tol":        ORACLE_TOL,
    "convergence_shift": CONVERGENCE_SHIFT,
    "manley_rowe_tol":   MANLEY_ROWE_TOL,
    "unitarity_tol":     UNITARITY_TOL,
    "convention_tol":    CONVENTION_TOL,
    "fast_xis":          FAST_VERIFY_XIS,
    "full_xis":          FULL_VERIFY_XIS,
}

INTEGRATOR_PARAMS = {
    "method": INTEGRATOR,
    "rtol":   INTEGRATOR_RTOL,
    "atol":   INTEGRATOR_RTOL * 1e-2,
}

LOG_LEVEL = resolve_level(LOG_LEVEL_STR)
logger    = setup_logger("hocm", level=LOG_LEVEL, log_to_file=LOG_TO_FILE)
