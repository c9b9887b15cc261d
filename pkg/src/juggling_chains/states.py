"""Landing states, throw operators, state weights, and state enumeration.

A landing state records, for each of the next h seconds, whether a ball is
committed to land then (slot 1 is "now").  A TL-state additionally records
each landing ball's total air time.  Both are immutable, hashable, totally
ordered value types with a textual form that parses back exactly.

Canonical orders (everything downstream indexes states by them):

* landing states compare like binary strings read slot 1 to slot h with
  BALL < EMPTY, so all-ball prefixes sort first;
* TL-states compare first by their occupancy pattern (the landing order of
  their projections), then by the air-time tuple, so the TL order refines
  the landing order and each fiber is a contiguous run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .errors import IllegalThrowError

__all__ = [
    "BALL",
    "DEFAULT_MAX_H",
    "EMPTY",
    "LandingState",
    "Slot",
    "TLState",
    "enumerate_landing_states",
    "enumerate_tl_states",
    "fiber",
    "phi",
    "project",
    "throw",
    "throw_tl",
    "weight",
]

# Enumeration guard: state universes grow like C(h,f) and 2^h, so refuse
# absurd h unless the caller raises the bound explicitly.
DEFAULT_MAX_H = 16

_TL_DIGITS = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class Slot(str, Enum):
    """One slot of a landing schedule: a committed ball or a free second."""

    BALL = "x"
    EMPTY = "-"


BALL = Slot.BALL
EMPTY = Slot.EMPTY


def _check_h(h: int, max_h: int) -> None:
    if h < 1:
        raise ValueError(f"h must be a positive integer, got {h}")
    if h > max_h:
        raise ValueError(
            f"h={h} exceeds the enumeration bound {max_h}; pass max_h to override"
        )


def _check_f(h: int, f: int) -> None:
    if not 0 <= f <= h:
        raise ValueError(f"f must satisfy 0 <= f <= h={h}, got {f}")


@dataclass(frozen=True)
class LandingState:
    """An h-tuple over {BALL, EMPTY}; slot t is the commitment t seconds out."""

    slots: tuple[Slot, ...]

    def __post_init__(self) -> None:
        if len(self.slots) == 0:
            raise ValueError("a landing state needs at least one slot (h >= 1)")
        if not all(isinstance(s, Slot) for s in self.slots):
            raise ValueError("slots must be Slot members")

    @property
    def h(self) -> int:
        return len(self.slots)

    @property
    def b(self) -> int:
        """Number of balls in the air."""
        return sum(1 for s in self.slots if s is BALL)

    @property
    def f(self) -> int:
        """Number of empty slots."""
        return self.h - self.b

    @classmethod
    def parse(cls, text: str) -> LandingState:
        """Parse the textual form, e.g. ``"xx-x-"``."""
        try:
            return cls(tuple(Slot(c) for c in text))
        except ValueError:
            raise ValueError(f"not a landing state: {text!r}") from None

    def __str__(self) -> str:
        return "".join(s.value for s in self.slots)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(0 if s is BALL else 1 for s in self.slots)

    def __lt__(self, other: LandingState) -> bool:
        if not isinstance(other, LandingState):
            return NotImplemented
        return (self.h, self.sort_key()) < (other.h, other.sort_key())


@dataclass(frozen=True)
class TLState:
    """A landing state enriched with each ball's total air time.

    Slot t holds the air time of the ball landing t seconds out, or None if
    no ball lands then.  Air times are measured from the moment of the
    throw, so a value i at slot t means the ball was thrown i - t seconds
    ago.  Validity requires, for every occupied slot t:

    * t <= value <= h (the ball was already thrown, at height at most h);
    * the differences value - t are pairwise distinct (no two balls were
      thrown at the same instant).
    """

    slots: tuple[int | None, ...]

    def __post_init__(self) -> None:
        h = len(self.slots)
        if h == 0:
            raise ValueError("a TL-state needs at least one slot (h >= 1)")
        seen_diffs: set[int] = set()
        for t, value in enumerate(self.slots, start=1):
            if value is None:
                continue
            if not isinstance(value, int) or not t <= value <= h:
                raise ValueError(
                    f"slot {t} of a TL-state with h={h} must hold None or an "
                    f"integer in [{t}, {h}], got {value!r}"
                )
            if value - t in seen_diffs:
                raise ValueError(
                    f"two slots share the throw instant value - slot = {value - t}"
                )
            seen_diffs.add(value - t)

    @property
    def h(self) -> int:
        return len(self.slots)

    @property
    def b(self) -> int:
        return sum(1 for v in self.slots if v is not None)

    @property
    def f(self) -> int:
        return self.h - self.b

    @classmethod
    def parse(cls, text: str) -> TLState:
        """Parse the textual form, e.g. ``"6-46--7"`` (A=10, B=11, ...)."""
        slots: list[int | None] = []
        for c in text:
            if c == "-":
                slots.append(None)
            else:
                try:
                    slots.append(_TL_DIGITS.index(c.upper()))
                except ValueError:
                    raise ValueError(f"not a TL-state: {text!r}") from None
        return cls(tuple(slots))

    def __str__(self) -> str:
        parts = []
        for v in self.slots:
            if v is None:
                parts.append("-")
            elif v < len(_TL_DIGITS):
                parts.append(_TL_DIGITS[v])
            else:
                raise ValueError(f"air time {v} has no single-character digit")
        return "".join(parts)

    def sort_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        pattern = tuple(0 if v is not None else 1 for v in self.slots)
        values = tuple(0 if v is None else v for v in self.slots)
        return (pattern, values)

    def __lt__(self, other: TLState) -> bool:
        if not isinstance(other, TLState):
            return NotImplemented
        return (self.h, self.sort_key()) < (other.h, other.sort_key())


def phi(state: LandingState, t: int) -> int:
    """Number of empty slots after position t, if slot t holds a ball; else 0.

    This is the count of landing times a ball landing at t could be re-thrown
    to, other than the always-free virtual slot h+1.
    """
    if not 1 <= t <= state.h:
        raise ValueError(f"position must be in [1, {state.h}], got {t}")
    if state.slots[t - 1] is not BALL:
        return 0
    return sum(1 for s in state.slots[t:] if s is EMPTY)


def weight(state: LandingState) -> int:
    """The state weight: product over slots of (1 + phi(state, t))."""
    result = 1
    for t in range(1, state.h + 1):
        result *= 1 + phi(state, t)
    return result


def throw(state: LandingState, j: int) -> LandingState:
    """Apply the raw throwing operator for height j.

    Time advances one second (slots shift left, a fresh empty slot enters at
    h), and for j >= 1 the ball in hand is committed to land j seconds out.
    No legality check: the graph builders decide which throws are allowed
    from which states.
    """
    if not 0 <= j <= state.h:
        raise ValueError(f"throw height must be in [0, {state.h}], got {j}")
    shifted = state.slots[1:] + (EMPTY,)
    if j == 0:
        return LandingState(shifted)
    return LandingState(shifted[: j - 1] + (BALL,) + shifted[j:])


def throw_tl(state: TLState, j: int) -> TLState:
    """Apply the throwing operator for height j to a TL-state.

    A height-j throw (j >= 1) needs a ball in hand (slot 1 occupied) and a
    free landing time j seconds after the throw (slot j+1 empty before the
    shift; slot h+1 is always free).  The thrown ball's air time is j.  Air
    times are absolute, so surviving values do not change under the shift.
    """
    if not 0 <= j <= state.h:
        raise ValueError(f"throw height must be in [0, {state.h}], got {j}")
    shifted = state.slots[1:] + (None,)
    if j == 0:
        return TLState(shifted)
    if state.slots[0] is None:
        raise IllegalThrowError(f"no ball in hand to throw from {state}")
    if j < state.h and state.slots[j] is not None:
        raise IllegalThrowError(f"slot {j + 1} of {state} is already committed")
    return TLState(shifted[: j - 1] + (j,) + shifted[j:])


def project(state: TLState) -> LandingState:
    """Forget air times: slot t is BALL iff slot t of the TL-state is occupied."""
    return LandingState(tuple(EMPTY if v is None else BALL for v in state.slots))


def enumerate_landing_states(
    h: int, f: int, *, max_h: int = DEFAULT_MAX_H
) -> list[LandingState]:
    """All C(h,f) landing states with f empty slots, in canonical order."""
    _check_h(h, max_h)
    _check_f(h, f)
    states = []
    for empty_positions in itertools.combinations(range(h), f):
        slots = [BALL] * h
        for p in empty_positions:
            slots[p] = EMPTY
        states.append(LandingState(tuple(slots)))
    states.sort()
    return states


def enumerate_tl_states(h: int, f: int, *, max_h: int = DEFAULT_MAX_H) -> list[TLState]:
    """All TL-states with h slots and f empty ones, in canonical order.

    Built by direct backtracking over slots under the validity conditions,
    independently of the set-partition correspondence that counts them.
    """
    _check_h(h, max_h)
    _check_f(h, f)
    states: list[TLState] = []
    prefix: list[int | None] = []

    def extend(t: int, empties_left: int, used_diffs: frozenset[int]) -> None:
        if t > h:
            states.append(TLState(tuple(prefix)))
            return
        if empties_left > 0:
            prefix.append(None)
            extend(t + 1, empties_left - 1, used_diffs)
            prefix.pop()
        if (h - t + 1) > empties_left:
            for value in range(t, h + 1):
                if value - t in used_diffs:
                    continue
                prefix.append(value)
                extend(t + 1, empties_left, used_diffs | {value - t})
                prefix.pop()

    extend(1, f, frozenset())
    states.sort()
    return states


def fiber(state: LandingState, *, max_h: int = DEFAULT_MAX_H) -> list[TLState]:
    """All TL-states projecting to the given landing state, in canonical order.

    Computed by filtering the full TL universe, independently of the weight
    function that predicts the fiber's size.
    """
    return [
        tl
        for tl in enumerate_tl_states(state.h, state.f, max_h=max_h)
        if project(tl) == state
    ]
