"""State graphs of the juggling models, with DOT and JSON export.

Four directed multigraphs share one representation: vertices are states in
canonical order, edges are (source index, target index, throw height).

* standard: fixed ball count; a ball in hand must be thrown to a free slot,
  an empty hand waits (height 0).
* tl: the same dynamics on TL-states.
* add-drop: all 2^h occupancy patterns; height 0 is always available (a
  ball in hand is dropped), and any free slot may receive a throw even with
  an empty hand (a new ball is inserted).
* annihilation: the same edge set as add-drop; only the probabilities
  assigned downstream differ, so only the kind tag does here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .states import (
    BALL,
    DEFAULT_MAX_H,
    EMPTY,
    LandingState,
    TLState,
    enumerate_landing_states,
    enumerate_tl_states,
    throw,
    throw_tl,
)

__all__ = [
    "GraphKind",
    "StateGraph",
    "build_add_drop",
    "build_annihilation",
    "build_standard",
    "build_tl",
    "export_dot",
    "graph_to_json",
    "precursors",
]

State = Union[LandingState, TLState]


class GraphKind(str, Enum):
    STANDARD = "standard"
    TL = "tl"
    ADD_DROP = "add-drop"
    ANNIHILATION = "annihilation"


@dataclass(frozen=True)
class StateGraph:
    """A labeled digraph over states; edges are (src, dst, throw height) index triples."""

    kind: GraphKind
    h: int
    f: int | None
    vertices: tuple[State, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        n = len(self.vertices)
        for src, dst, label in self.edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError(f"edge ({src}, {dst}, {label}) indexes outside {n} vertices")
            if not 0 <= label <= self.h:
                raise ValueError(f"edge label {label} outside throw heights [0, {self.h}]")

    def index_of(self, v: State) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise KeyError(f"state {v} is not a vertex of this graph") from None

    def out_edges(self, src: int) -> list[tuple[int, int, int]]:
        return [e for e in self.edges if e[0] == src]


def _legal_heights(slots: tuple, h: int, occupied) -> list[int]:
    # heights whose landing slot is free; slot h+1 is free by convention
    return [j for j in range(1, h + 1) if j == h or not occupied(slots[j])]


def build_standard(h: int, f: int, *, max_h: int = DEFAULT_MAX_H) -> StateGraph:
    """The fixed-ball-count graph: Θ_0 from an empty hand, else every legal throw."""
    vertices = tuple(enumerate_landing_states(h, f, max_h=max_h))
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for i, v in enumerate(vertices):
        if v.slots[0] is EMPTY:
            edges.append((i, index[throw(v, 0)], 0))
        else:
            for j in _legal_heights(v.slots, h, lambda s: s is BALL):
                edges.append((i, index[throw(v, j)], j))
    return StateGraph(GraphKind.STANDARD, h, f, vertices, tuple(edges))


def build_tl(h: int, f: int, *, max_h: int = DEFAULT_MAX_H) -> StateGraph:
    """The TL analogue of the standard graph; projects edge-by-edge onto it."""
    vertices = tuple(enumerate_tl_states(h, f, max_h=max_h))
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for i, v in enumerate(vertices):
        if v.slots[0] is None:
            edges.append((i, index[throw_tl(v, 0)], 0))
        else:
            for j in _legal_heights(v.slots, h, lambda s: s is not None):
                edges.append((i, index[throw_tl(v, j)], j))
    return StateGraph(GraphKind.TL, h, f, vertices, tuple(edges))


def _all_landing_states(h: int, max_h: int) -> tuple[LandingState, ...]:
    # canonical order over all 2^h states: empty count ascending, then binary
    out: list[LandingState] = []
    for f in range(h + 1):
        out.extend(enumerate_landing_states(h, f, max_h=max_h))
    return tuple(out)


def _build_unrestricted(kind: GraphKind, h: int, max_h: int) -> StateGraph:
    if h < 1:
        raise ValueError(f"h must be a positive integer, got {h}")
    vertices = _all_landing_states(h, max_h)
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for i, v in enumerate(vertices):
        edges.append((i, index[throw(v, 0)], 0))
        for j in _legal_heights(v.slots, h, lambda s: s is BALL):
            edges.append((i, index[throw(v, j)], j))
    return StateGraph(kind, h, None, vertices, tuple(edges))


def build_add_drop(h: int, *, max_h: int = DEFAULT_MAX_H) -> StateGraph:
    """The unrestricted graph: drops always possible, insertions into any free slot."""
    return _build_unrestricted(GraphKind.ADD_DROP, h, max_h)


def build_annihilation(h: int, *, max_h: int = DEFAULT_MAX_H) -> StateGraph:
    """Same edge set as build_add_drop; downstream probabilities differ."""
    return _build_unrestricted(GraphKind.ANNIHILATION, h, max_h)


def precursors(g: StateGraph, v: State) -> list[tuple[State, int]]:
    """All (state, height) pairs with an edge into v."""
    target = g.index_of(v)
    return [(g.vertices[src], label) for src, dst, label in g.edges if dst == target]


def _edge_style(g: StateGraph, src: int, label: int) -> str | None:
    if g.kind not in (GraphKind.ADD_DROP, GraphKind.ANNIHILATION):
        return None
    first = g.vertices[src].slots[0]
    if label == 0 and first is BALL:
        return "dashed"  # the ball in hand is dropped
    if label > 0 and first is EMPTY:
        return "dotted"  # a new ball is inserted
    return None  # a regular throw, solid


def export_dot(g: StateGraph) -> str:
    """Render the graph as DOT text; nodes carry the textual state form."""
    title = f"{g.kind.value} h={g.h}" + (f" f={g.f}" if g.f is not None else "")
    lines = [f'digraph "{title}" {{', "  rankdir=LR;"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for src, dst, label in g.edges:
        style = _edge_style(g, src, label)
        attrs = f'label="{label}"' + (f", style={style}" if style else "")
        lines.append(f'  "{g.vertices[src]}" -> "{g.vertices[dst]}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: StateGraph) -> dict:
    """JSON-serializable dump: {kind, h, f?, vertices, edges}."""
    out: dict = {"kind": g.kind.value, "h": g.h}
    if g.f is not None:
        out["f"] = g.f
    out["vertices"] = [str(v) for v in g.vertices]
    out["edges"] = [list(e) for e in g.edges]
    return out
