"""Utility modules for the higher-order covariance entanglement scanner."""
from .logger import logger, setup_logger, get_logger, set_level
from . import config as settings
from .errors import (
    HOCMError,
    ConfigError,
    AlgebraError,
    CutoffError,
    EvolutionError,
    LocalityError,
    NumericalError,
    OutputError,
)

__all__ = [
    "logger",
    "setup_logger",
    "get_logger",
    "set_level",
    "settings",
    "HOCMError",
    "ConfigError",
    "AlgebraError",
    "CutoffError",
    "EvolutionError",
    "LocalityError",
    "NumericalError",
    "OutputError",
]
