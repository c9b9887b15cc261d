"""Transition matrices, exact stationary distributions, and chain checks.

All four chains assign probabilities over the graphs from `graphs`:

* standard and tl: uniform over the legal throws (1/(f+1) with a ball in
  hand, else the forced shift);
* add-drop: uniform over the f'+2 moves, where f' counts the free slots
  after the first;
* annihilation: every throw height 0..h is equally likely (1/(h+1)); all
  the heights that would land on an occupied slot destroy the ball in hand,
  so their mass joins the drop edge.

Everything on the exact path is a `fractions.Fraction`; floats appear only
in power iteration, which exists for fast numeric convergence reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .combinatorics import bell, stirling2
from .errors import ChainStructureError, ConvergenceError
from .graphs import (
    GraphKind,
    StateGraph,
    build_add_drop,
    build_annihilation,
    build_standard,
    build_tl,
)
from .states import (
    DEFAULT_MAX_H,
    EMPTY,
    LandingState,
    TLState,
    enumerate_landing_states,
    enumerate_tl_states,
    project,
    weight,
)

__all__ = [
    "StationaryDistribution",
    "TransitionMatrix",
    "check_doubly_stochastic",
    "closed_form",
    "distribution_from_json",
    "distribution_to_csv",
    "distribution_to_json",
    "free_slots_after_first",
    "is_irreducible",
    "lumped_tl_matrix",
    "matrix_add_drop",
    "matrix_annihilation",
    "matrix_from_json",
    "matrix_power",
    "matrix_standard",
    "matrix_tl",
    "matrix_to_json",
    "period",
    "stationary_exact",
    "stationary_power",
    "stirling_convergence_report",
    "verify_lumpability",
]

State = Union[LandingState, TLState]
ONE = Fraction(1)
ZERO = Fraction(0)


@dataclass(frozen=True)
class TransitionMatrix:
    """A row-stochastic matrix of exact rationals over a canonical state list."""

    states: tuple[State, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.states)
        if len(self.rows) != n or any(len(row) != n for row in self.rows):
            raise ValueError("matrix must be square over its state list")
        for i, row in enumerate(self.rows):
            if any(x < 0 for x in row):
                raise ValueError(f"negative entry in row {i}")
            if sum(row) != 1:
                raise ValueError(f"row {i} sums to {sum(row)}, not 1")

    @property
    def n(self) -> int:
        return len(self.states)

    def index_of(self, v: State) -> int:
        try:
            return self.states.index(v)
        except ValueError:
            raise KeyError(f"state {v} is not indexed by this matrix") from None


@dataclass(frozen=True)
class StationaryDistribution:
    """An exact probability vector over a state list."""

    states: tuple[State, ...]
    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.states) != len(self.probs):
            raise ValueError("states and probabilities differ in length")
        if any(p < 0 for p in self.probs):
            raise ValueError("negative probability")
        if sum(self.probs) != 1:
            raise ValueError(f"probabilities sum to {sum(self.probs)}, not 1")

    def __getitem__(self, v: State) -> Fraction:
        return self.probs[self.states.index(v)]


def free_slots_after_first(state: LandingState) -> int:
    """The count f' of empty slots among positions 2..h."""
    return sum(1 for s in state.slots[1:] if s is EMPTY)


def _uniform_over_out_edges(g: StateGraph) -> TransitionMatrix:
    n = len(g.vertices)
    degree = [0] * n
    for src, _, _ in g.edges:
        degree[src] += 1
    rows = [[ZERO] * n for _ in range(n)]
    for src, dst, _ in g.edges:
        rows[src][dst] += Fraction(1, degree[src])
    return TransitionMatrix(g.vertices, tuple(tuple(row) for row in rows))


def matrix_standard(h: int, f: int, *, max_h: int = DEFAULT_MAX_H) -> TransitionMatrix:
    """Transition matrix of the fixed-ball-count chain: uniform over legal throws."""
    return _uniform_over_out_edges(build_standard(h, f, max_h=max_h))


def matrix_tl(h: int, f: int, *, max_h: int = DEFAULT_MAX_H) -> TransitionMatrix:
    """Transition matrix of the TL chain; doubly stochastic."""
    return _uniform_over_out_edges(build_tl(h, f, max_h=max_h))


def matrix_add_drop(h: int, *, max_h: int = DEFAULT_MAX_H) -> TransitionMatrix:
    """Transition matrix of the add-drop chain: uniform over the f'+2 moves."""
    return _uniform_over_out_edges(build_add_drop(h, max_h=max_h))


def matrix_annihilation(h: int, *, max_h: int = DEFAULT_MAX_H) -> TransitionMatrix:
    """Transition matrix of the annihilation chain.

    All h+1 throw heights are uniform; heights landing on an occupied slot
    annihilate the ball in hand and behave like the drop, so the drop edge
    carries (h-f')/(h+1) and each genuine throw edge carries 1/(h+1).
    """
    g = build_annihilation(h, max_h=max_h)
    n = len(g.vertices)
    rows = [[ZERO] * n for _ in range(n)]
    for src, dst, label in g.edges:
        if label == 0:
            f_prime = free_slots_after_first(g.vertices[src])
            rows[src][dst] += Fraction(h - f_prime, h + 1)
        else:
            rows[src][dst] += Fraction(1, h + 1)
    return TransitionMatrix(g.vertices, tuple(tuple(row) for row in rows))


def _support_adjacency(m: TransitionMatrix) -> list[list[int]]:
    return [
        [j for j, x in enumerate(row) if x > 0]
        for row in m.rows
    ]


def _bfs_levels(adjacency: list[list[int]], start: int) -> dict[int, int]:
    levels = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adjacency[u]:
                if v not in levels:
                    levels[v] = levels[u] + 1
                    nxt.append(v)
        frontier = nxt
    return levels


def is_irreducible(m: TransitionMatrix) -> bool:
    """True iff the support digraph is strongly connected."""
    adjacency = _support_adjacency(m)
    if len(_bfs_levels(adjacency, 0)) != m.n:
        return False
    reverse: list[list[int]] = [[] for _ in range(m.n)]
    for u, outs in enumerate(adjacency):
        for v in outs:
            reverse[v].append(u)
    return len(_bfs_levels(reverse, 0)) == m.n


def period(m: TransitionMatrix) -> int:
    """The period of an irreducible chain: gcd of its cycle lengths."""
    if not is_irreducible(m):
        raise ChainStructureError("period is defined here only for irreducible chains")
    adjacency = _support_adjacency(m)
    levels = _bfs_levels(adjacency, 0)
    g = 0
    for u, outs in enumerate(adjacency):
        for v in outs:
            g = math.gcd(g, levels[u] + 1 - levels[v])
    return g


def _require_ergodic(m: TransitionMatrix) -> None:
    if not is_irreducible(m):
        raise ChainStructureError(
            "chain is not irreducible; the stationary distribution is not unique"
        )
    p = period(m)
    if p != 1:
        raise ChainStructureError(
            f"chain is periodic with period {p}; powers of the matrix do not converge"
        )


def stationary_exact(m: TransitionMatrix) -> StationaryDistribution:
    """The unique exact stationary distribution of an irreducible aperiodic chain.

    Solves the augmented system {alpha P = alpha, sum(alpha) = 1} by Gaussian
    elimination with partial pivoting over exact rationals.
    """
    _require_ergodic(m)
    n = m.n
    # rows of (P^T - I), with the last equation replaced by normalization;
    # dropping one balance equation is safe because they sum to zero
    a = [[m.rows[j][i] - (ONE if i == j else ZERO) for j in range(n)] for i in range(n)]
    a[n - 1] = [ONE] * n
    b = [ZERO] * n
    b[n - 1] = ONE

    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0:
            raise ChainStructureError("singular balance system; chain is degenerate")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
        pivot_row = a[col]
        inv = ONE / pivot_row[col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor == 0:
                continue
            row = a[r]
            for c in range(col, n):
                row[c] -= factor * pivot_row[c]
            b[r] -= factor * b[col]

    x = [ZERO] * n
    for i in range(n - 1, -1, -1):
        acc = b[i]
        row = a[i]
        for j in range(i + 1, n):
            acc -= row[j] * x[j]
        x[i] = acc / row[i]
    return StationaryDistribution(m.states, tuple(x))


def closed_form(
    kind: GraphKind, h: int, f: int | None = None, *, max_h: int = DEFAULT_MAX_H
) -> StationaryDistribution:
    """The closed-form stationary distribution of each chain, built directly.

    standard: weight(v) / S(h+1, f+1); tl: uniform 1 / S(h+1, f+1);
    add-drop: weight(v) / B_{h+1}; annihilation:
    (h!/(h-f_v)!) * weight(v) / (h+1)^h with f_v the state's empty count.
    """
    kind = GraphKind(kind)
    if kind in (GraphKind.STANDARD, GraphKind.TL):
        if f is None:
            raise ValueError(f"{kind.value} needs an explicit f")
        if kind is GraphKind.STANDARD:
            states = tuple(enumerate_landing_states(h, f, max_h=max_h))
            denom = stirling2(h + 1, f + 1)
            probs = tuple(Fraction(weight(v), denom) for v in states)
        else:
            tl_states = tuple(enumerate_tl_states(h, f, max_h=max_h))
            uniform = Fraction(1, stirling2(h + 1, f + 1))
            return StationaryDistribution(tl_states, (uniform,) * len(tl_states))
        return StationaryDistribution(states, probs)
    if f is not None:
        raise ValueError(f"{kind.value} spans all f; do not pass one")
    all_states = tuple(build_add_drop(h, max_h=max_h).vertices)
    if kind is GraphKind.ADD_DROP:
        denom = bell(h + 1)
        probs = tuple(Fraction(weight(v), denom) for v in all_states)
    else:
        denom = (h + 1) ** h
        probs = tuple(
            Fraction(
                math.factorial(h) // math.factorial(h - v.f) * weight(v), denom
            )
            for v in all_states
        )
    return StationaryDistribution(all_states, probs)


def _mat_mul(
    a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]
) -> tuple[tuple[Fraction, ...], ...]:
    bt = list(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col) if x), ZERO) for col in bt)
        for row in a
    )


def matrix_power(m: TransitionMatrix, l: int) -> TransitionMatrix:
    """Exact l-th power of a transition matrix (square and multiply)."""
    if l < 1:
        raise ValueError(f"exponent must be >= 1, got {l}")
    result = None
    base = m.rows
    e = l
    while e:
        if e & 1:
            result = base if result is None else _mat_mul(result, base)
        e >>= 1
        if e:
            base = _mat_mul(base, base)
    return TransitionMatrix(m.states, result)


def _row_times_matrix(
    row: Sequence[Fraction], rows: Sequence[Sequence[Fraction]]
) -> list[Fraction]:
    n = len(row)
    out = [ZERO] * n
    for i, x in enumerate(row):
        if x:
            source = rows[i]
            for j, y in enumerate(source):
                if y:
                    out[j] += x * y
    return out


def stationary_power(
    m: TransitionMatrix, tol: float = 1e-12, max_iter: int = 100000
) -> tuple[list[float], int, float]:
    """Power iteration from the uniform vector, in floating point.

    Returns (vector, iterations, final L1 residual).  Raises ConvergenceError
    with the last iterate if max_iter steps do not reach tol.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    _require_ergodic(m)
    p = np.array([[float(x) for x in row] for row in m.rows], dtype=float)
    v = np.full(m.n, 1.0 / m.n)
    for iteration in range(1, max_iter + 1):
        w = v @ p
        residual = float(np.abs(w - v).sum())
        if residual <= tol:
            return w.tolist(), iteration, residual
        v = w
    raise ConvergenceError(
        f"no convergence to {tol} within {max_iter} iterations",
        last_iterate=v.tolist(),
        residual=residual,
    )


def stirling_convergence_report(
    h: int,
    f: int,
    source_state: LandingState,
    l_max: int,
    target_state: LandingState | None = None,
    *,
    max_h: int = DEFAULT_MAX_H,
) -> list[Fraction]:
    """Exact l-step transition probabilities source -> target for l = 1..l_max.

    The target defaults to the state with all empty slots first, whose
    stationary probability is 1/S(h+1, f+1); the sequence therefore
    converges to the reciprocal of a Stirling number.
    """
    if l_max < 1:
        raise ValueError(f"l_max must be >= 1, got {l_max}")
    m = matrix_standard(h, f, max_h=max_h)
    if target_state is None:
        target_state = m.states[-1]  # all empties first: last in canonical order
    src = m.index_of(source_state)
    dst = m.index_of(target_state)
    row: Sequence[Fraction] = m.rows[src]
    out = [row[dst]]
    for _ in range(l_max - 1):
        row = _row_times_matrix(row, m.rows)
        out.append(row[dst])
    return out


def check_doubly_stochastic(
    m: TransitionMatrix,
) -> tuple[bool, State | None]:
    """Whether every column also sums to exactly 1; returns the first bad column."""
    for j in range(m.n):
        if sum(row[j] for row in m.rows) != 1:
            return False, m.states[j]
    return True, None


def _tl_fibers(
    tl: TransitionMatrix, standard_states: Sequence[LandingState]
) -> dict[LandingState, list[int]]:
    fibers: dict[LandingState, list[int]] = {v: [] for v in standard_states}
    for i, s in enumerate(tl.states):
        fibers[project(s)].append(i)
    return fibers


def lumped_tl_matrix(h: int, f: int, *, max_h: int = DEFAULT_MAX_H) -> TransitionMatrix:
    """Collapse each fiber of the TL chain to one state, from a representative row.

    Entry [v][w] sums the first fiber member's row over the target fiber;
    verify_lumpability separately checks the choice of member cannot matter.
    """
    standard = tuple(enumerate_landing_states(h, f, max_h=max_h))
    tl = matrix_tl(h, f, max_h=max_h)
    fibers = _tl_fibers(tl, standard)
    rows = []
    for v in standard:
        representative = tl.rows[fibers[v][0]]
        rows.append(
            tuple(sum(representative[j] for j in fibers[w]) for w in standard)
        )
    return TransitionMatrix(standard, tuple(rows))


def verify_lumpability(
    h: int, f: int, *, max_h: int = DEFAULT_MAX_H
) -> tuple[bool, tuple[TLState, LandingState, LandingState] | None]:
    """Check the projection onto landing states preserves the Markov law.

    For every TL-state u and every pair (v, w) of landing states with
    project(u) = v, the mass u sends into the fiber of w must equal the
    standard transition probability v -> w.  Returns (True, None) or
    (False, (u, v, w)) on the first violation.
    """
    standard = matrix_standard(h, f, max_h=max_h)
    tl = matrix_tl(h, f, max_h=max_h)
    fibers = _tl_fibers(tl, standard.states)
    for vi, v in enumerate(standard.states):
        for u_index in fibers[v]:
            u_row = tl.rows[u_index]
            for wi, w in enumerate(standard.states):
                into_fiber = sum(u_row[j] for j in fibers[w])
                if into_fiber != standard.rows[vi][wi]:
                    return False, (tl.states[u_index], v, w)
    return True, None


def _universe_of(states: Sequence[State]) -> str:
    return "tl" if states and isinstance(states[0], TLState) else "landing"


def _parse_states(texts: Sequence[str], universe: str) -> tuple[State, ...]:
    # "---" is a valid rendering in both universes, so dumps carry a tag
    if universe == "tl":
        return tuple(TLState.parse(t) for t in texts)
    if universe == "landing":
        return tuple(LandingState.parse(t) for t in texts)
    raise ValueError(f"unknown state universe {universe!r}")


def matrix_to_json(m: TransitionMatrix) -> dict:
    """JSON-serializable dump with rationals as "p/q" strings."""
    return {
        "universe": _universe_of(m.states),
        "states": [str(v) for v in m.states],
        "rows": [[str(x) for x in row] for row in m.rows],
    }


def matrix_from_json(data: dict) -> TransitionMatrix:
    """Inverse of matrix_to_json; bit-exact."""
    return TransitionMatrix(
        _parse_states(data["states"], data["universe"]),
        tuple(tuple(Fraction(x) for x in row) for row in data["rows"]),
    )


def distribution_to_json(d: StationaryDistribution) -> dict:
    return {
        "universe": _universe_of(d.states),
        "states": [str(v) for v in d.states],
        "probs": [str(p) for p in d.probs],
    }


def distribution_from_json(data: dict) -> StationaryDistribution:
    return StationaryDistribution(
        _parse_states(data["states"], data["universe"]),
        tuple(Fraction(p) for p in data["probs"]),
    )


def distribution_to_csv(d: StationaryDistribution) -> str:
    """CSV table of (state, exact probability, decimal probability)."""
    lines = ["state,exact,decimal"]
    for v, p in zip(d.states, d.probs):
        lines.append(f"{v},{p},{float(p)!r}")
    return "\n".join(lines) + "\n"
