"""Exact Markov chain models of random juggling.

Builds the state graphs of a juggler throwing at random, computes their
stationary distributions three independent ways (closed form, exact rational
solve, simulation), and machine-checks the structural facts connecting them.
"""

from __future__ import annotations

from .chains import (
    StationaryDistribution,
    TransitionMatrix,
    closed_form,
    matrix_add_drop,
    matrix_annihilation,
    matrix_standard,
    matrix_tl,
    stationary_exact,
    stationary_power,
)
from .errors import ChainStructureError, ConvergenceError, IllegalThrowError
from .graphs import GraphKind, StateGraph
from .montecarlo import WalkReport, random_walk, tv_distance
from .states import (
    BALL,
    EMPTY,
    LandingState,
    Slot,
    TLState,
    enumerate_landing_states,
    enumerate_tl_states,
    fiber,
    weight,
)

__version__ = "0.1.0"

__all__ = [
    "BALL",
    "EMPTY",
    "ChainStructureError",
    "ConvergenceError",
    "GraphKind",
    "IllegalThrowError",
    "LandingState",
    "Slot",
    "StateGraph",
    "StationaryDistribution",
    "TLState",
    "TransitionMatrix",
    "WalkReport",
    "__version__",
    "closed_form",
    "enumerate_landing_states",
    "enumerate_tl_states",
    "fiber",
    "matrix_add_drop",
    "matrix_annihilation",
    "matrix_standard",
    "matrix_tl",
    "random_walk",
    "stationary_exact",
    "stationary_power",
    "tv_distance",
    "weight",
]
