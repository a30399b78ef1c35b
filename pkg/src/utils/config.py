import os
from pathlib import Path
from dotenv import load_dotenv

_ROOT = Path(__file__).resolve().parents[2]
_ENV_FILE = _ROOT / ".env"
load_dotenv(dotenv_path=_ENV_FILE, override=False)


def _int(key: str, default: int) -> int:
    raw = os.getenv(key)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def _float(key: str, default: float) -> float:
    raw = os.getenv(key)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        return default


def _str(key: str, default: str) -> str:
    return os.getenv(key, default)


def _bool(key: str, default: bool) -> bool:
    raw = os.getenv(key)
    if raw is None:
        return default
    return raw.strip().lower() in ("true", "1", "yes")


# a >= k * p and b >= l * p keep the quantum-pump dynamics free of truncation
CUTOFF_A = _int("CUTOFF_A", 64)
CUTOFF_B = _int("CUTOFF_B", 128)
CUTOFF_P = _int("CUTOFF_P", 64)

REDUCED_CUTOFF_A = _int("REDUCED_CUTOFF_A", 8)
REDUCED_CUTOFF_B = _int("REDUCED_CUTOFF_B", 16)
REDUCED_CUTOFF_P = _int("REDUCED_CUTOFF_P", 30)

HAM_K         = _int("HAM_K",           1)
HAM_L         = _int("HAM_L",           2)
PUMP_KIND     = _str("PUMP_KIND",       "quantum").lower()
ALPHA_P       = _float("ALPHA_P",       5.0)
TRANSMITTANCE = _float("TRANSMITTANCE", 0.75)

XI_START     = _float("XI_START",     0.0)
XI_STOP      = _float("XI_STOP",      1.4)
XI_STEP      = _float("XI_STEP",      0.02)
XI_PRECISION = _float("XI_PRECISION", 1e-3)

ENTANGLEMENT_TOL  = _float("ENTANGLEMENT_TOL",  1e-8)
HERMITIAN_TOL     = _float("HERMITIAN_TOL",     1e-10)
REALITY_TOL       = _float("REALITY_TOL",       1e-10)
PUMP_TAIL_TOL     = _float("PUMP_TAIL_TOL",     1e-10)
LEAKAGE_THRESHOLD = _float("LEAKAGE_THRESHOLD", 1e-6)
LEAKAGE_ABORT     = _float("LEAKAGE_ABORT",     1e-2)
# reduced-cutoff runs flag leakage rather than abort
REDUCED_LEAKAGE_ABORT = _float("REDUCED_LEAKAGE_ABORT", 1.0)
NORM_TOL          = _float("NORM_TOL",          1e-9)
PRUNE_TOL         = _float("PRUNE_TOL",         1e-15)

ORACLE_TOL        = _float("ORACLE_TOL",        1e-8)
CONVERGENCE_SHIFT = _float("CONVERGENCE_SHIFT", 0.01)
MANLEY_ROWE_TOL   = _float("MANLEY_ROWE_TOL",   1e-6)
UNITARITY_TOL     = _float("UNITARITY_TOL",     1e-12)
CONVENTION_TOL    = _float("CONVENTION_TOL",    1e-8)
FAST_VERIFY_XIS   = _int("FAST_VERIFY_XIS",     2)
FULL_VERIFY_XIS   = _int("FULL_VERIFY_XIS",     5)

INTEGRATOR      = _str("INTEGRATOR",        "expm").lower()
INTEGRATOR_RTOL = _float("INTEGRATOR_RTOL", 1e-10)
MAX_BASIS_DIM   = _int("MAX_BASIS_DIM",     4_000_000)

N_JOBS = _int("N_JOBS", 1)
SEED   = _int("SEED",   42)

LOG_LEVEL_STR = _str("LOG_LEVEL", "INFO").upper()
LOG_TO_FILE   = _bool("LOG_TO_FILE", True)
