"""Passive linear-optics networks acting on the native modes."""
from .compiler import (
    VACUUM_TOKENS,
    BeamSplitter,
    NetworkSpec,
    CompiledNetwork,
    compile_steps,
    compile_network,
)
from .pushforward import (
    MomentQuery,
    NetworkProjector,
    PushforwardEvaluator,
    check_degree,
    pushforward_moment,
    DirectOracle,
    direct_oracle_moment,
)

__all__ = [
    "VACUUM_TOKENS",
    "BeamSplitter",
    "NetworkSpec",
    "CompiledNetwork",
    "compile_steps",
    "compile_network",
    "MomentQuery",
    "NetworkProjector",
    "PushforwardEvaluator",
    "check_degree",
    "pushforward_moment",
    "DirectOracle",
    "direct_oracle_moment",
]
