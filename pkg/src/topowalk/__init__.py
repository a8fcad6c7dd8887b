"""Two-particle topological split-step quantum walk simulator."""

from .hilbert import (
    ParamCode,
    StateVector,
    WalkConfig,
    config_from_code,
    decode,
    encode,
    make_initial,
)
from .evolution import StepPlan, evolve, step

__all__ = [
    "ParamCode",
    "StateVector",
    "StepPlan",
    "WalkConfig",
    "config_from_code",
    "decode",
    "encode",
    "evolve",
    "make_initial",
    "step",
]

__version__ = "0.1.0"
