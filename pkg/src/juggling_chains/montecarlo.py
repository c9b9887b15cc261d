"""Random walks on the chains, compared against their stationary laws.

One documented generator drives everything: Python's Mersenne Twister
(`random.Random`), seeded with the walk's 64-bit seed.  Each step samples
the next state by cumulative-probability inversion over the current row,
converted to floats once up front.  Identical (matrix, start, steps, seed)
therefore reproduce an identical walk on any platform.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence, Union

from .chains import StationaryDistribution, TransitionMatrix, stationary_exact
from .states import LandingState, TLState

__all__ = ["WalkReport", "random_walk", "tv_distance", "walk_report_to_json"]

State = Union[LandingState, TLState]

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class WalkReport:
    """Outcome of one random walk.

    Occupancy counts the state occupied before each transition (the start
    state included), so counts sum to `steps`; only visited states appear.
    `empirical` is occupancy/steps over the matrix's state order, and
    `tv_distance` compares it with the reference distribution.  Occupancy
    maps from independent walks may be summed state by state.
    """

    steps: int
    seed: int
    occupancy: dict[State, int]
    empirical: tuple[float, ...]
    tv_distance: float


def tv_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """Total variation distance between probability vectors: half the L1 gap."""
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {len(p)} vs {len(q)}")
    return sum(abs(float(a) - float(b)) for a, b in zip(p, q)) / 2


def random_walk(
    m: TransitionMatrix,
    start: State,
    steps: int,
    seed: int,
    reference: StationaryDistribution | None = None,
) -> WalkReport:
    """Walk `steps` transitions from `start`, deterministically in `seed`.

    The empirical occupancy is compared against `reference` (the exact
    stationary distribution of m unless one is given).
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    position = m.index_of(start)
    if reference is None:
        reference = stationary_exact(m)
    n = m.n
    cumulative: list[list[float]] = []
    for row in m.rows:
        acc, cum = 0.0, []
        for x in row:
            acc += float(x)
            cum.append(acc)
        cum[-1] = 1.0  # guard against float round-off in the last bucket
        cumulative.append(cum)

    rng = random.Random(seed & _SEED_MASK)
    counts = [0] * n
    for _ in range(steps):
        counts[position] += 1
        row_cum = cumulative[position]
        position = min(bisect_right(row_cum, rng.random()), n - 1)

    empirical = tuple(c / steps for c in counts)
    report = WalkReport(
        steps=steps,
        seed=seed,
        occupancy={s: c for s, c in zip(m.states, counts) if c},
        empirical=empirical,
        tv_distance=tv_distance(empirical, [float(p) for p in reference.probs]),
    )
    return report


def walk_report_to_json(report: WalkReport) -> dict:
    """JSON-serializable dump: {steps, seed, occupancy, tv_distance}."""
    return {
        "steps": report.steps,
        "seed": report.seed,
        "occupancy": {str(s): c for s, c in report.occupancy.items()},
        "tv_distance": report.tv_distance,
    }
