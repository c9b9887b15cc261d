"""Unit tests for state types, throw operators, weights, and enumeration."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from juggling_chains.errors import IllegalThrowError
from juggling_chains.states import (
    BALL,
    EMPTY,
    LandingState,
    TLState,
    enumerate_landing_states,
    enumerate_tl_states,
    fiber,
    phi,
    project,
    throw,
    throw_tl,
    weight,
)


def L(text: str) -> LandingState:
    return LandingState.parse(text)


def T(text: str) -> TLState:
    return TLState.parse(text)


class TestLandingState:
    def test_parse_round_trip(self):
        for text in ["x", "-", "xx-x-", "x--x-x", "----", "xxxx"]:
            assert str(L(text)) == text

    def test_parse_rejects_bad_alphabet(self):
        with pytest.raises(ValueError):
            L("xo-")

    def test_h_zero_rejected(self):
        with pytest.raises(ValueError):
            LandingState(())
        with pytest.raises(ValueError):
            L("")

    def test_counts(self):
        s = L("xx-x-")
        assert (s.h, s.b, s.f) == (5, 3, 2)

    def test_value_semantics(self):
        assert L("x-x") == L("x-x")
        assert len({L("x-x"), L("x-x"), L("-xx")}) == 2

    def test_order_ball_before_empty(self):
        assert L("xxx-") < L("xx-x") < L("x-xx") < L("-xxx")


class TestTLState:
    def test_parse_round_trip(self):
        for text in ["6-46--7", "1--", "33-", "2-3"]:
            assert str(T(text)) == text

    def test_condition1_value_at_least_position(self):
        with pytest.raises(ValueError):
            TLState((None, 1, None))  # slot 2 holds air time 1 < 2

    def test_condition1_value_at_most_h(self):
        with pytest.raises(ValueError):
            TLState((4, None, None))  # air time 4 > h = 3

    def test_condition2_distinct_throw_instants(self):
        with pytest.raises(ValueError):
            TLState((1, 2, 3))  # all three differences are 0
        with pytest.raises(ValueError):
            T("-23")

    def test_parse_letter_digits(self):
        s = TLState((None,) * 11 + (12,))
        assert str(s) == "-" * 11 + "C"
        assert TLState.parse(str(s)) == s

    def test_order_refines_landing_order(self):
        universe = enumerate_tl_states(4, 2)
        projected = [project(t) for t in universe]
        assert projected == sorted(projected)


class TestPhiWeight:
    @pytest.mark.parametrize(
        "text,t,expected",
        [("xxx--", 1, 2), ("xxx--", 4, 0), ("--xxx", 3, 0)],
    )
    def test_phi_examples(self, text, t, expected):
        assert phi(L(text), t) == expected

    def test_phi_position_range(self):
        with pytest.raises(ValueError):
            phi(L("xxx"), 0)
        with pytest.raises(ValueError):
            phi(L("xxx"), 4)

    @pytest.mark.parametrize("text,expected", [("xxx--", 27), ("--xxx", 1), ("---", 1)])
    def test_weight_examples(self, text, expected):
        assert weight(L(text)) == expected

    def test_weight_vector_h5_f2(self):
        got = [weight(s) for s in enumerate_landing_states(5, 2)]
        assert got == [27, 18, 9, 12, 6, 3, 8, 4, 2, 1]


class TestThrow:
    def test_throw_sequence_fixture(self):
        s = L("x--x-x")
        s = throw(s, 2)
        assert s == L("-xx-x-")
        s = throw(s, 0)
        assert s == L("xx-x--")
        s = throw(s, 6)
        assert s == L("x-x--x")

    def test_height_range(self):
        with pytest.raises(ValueError):
            throw(L("xxx-"), 5)
        with pytest.raises(ValueError):
            throw(L("xxx-"), -1)

    def test_virtual_slot_allows_full_height(self):
        # slot h+1 is always free, so height h is available with a ball in hand
        assert throw(L("xxx-"), 4) == L("xx-x")

    def test_preserves_length(self):
        for j in range(5):
            assert throw(L("x-x-"), j).h == 4


class TestThrowTL:
    def test_shift_keeps_absolute_air_times(self):
        assert throw_tl(T("-33"), 0) == T("33-")

    def test_fresh_throw_gets_air_time_j(self):
        assert throw_tl(T("1--"), 1) == T("1--")
        assert throw_tl(T("3--"), 3) == T("--3")

    def test_requires_ball_in_hand(self):
        with pytest.raises(IllegalThrowError):
            throw_tl(T("-33"), 1)

    def test_requires_free_landing_slot(self):
        with pytest.raises(IllegalThrowError):
            throw_tl(T("32-"), 1)  # slot 2 already committed

    def test_height_range(self):
        with pytest.raises(ValueError):
            throw_tl(T("1--"), 4)


class TestProject:
    def test_worked_example(self):
        assert project(T("6-46--7")) == L("x-xx--x")

    def test_all_empty(self):
        assert project(T("---")) == L("---")

    def test_all_occupied(self):
        # the unique all-ball TL-state for h=3
        assert project(T("333")) == L("xxx")

    def test_preserves_f(self):
        for h, f in [(3, 1), (4, 2), (5, 0)]:
            for t in enumerate_tl_states(h, f):
                assert project(t).f == f


class TestEnumerateLandingStates:
    def test_h4_f1_order_fixture(self):
        got = [str(s) for s in enumerate_landing_states(4, 1)]
        assert got == ["xxx-", "xx-x", "x-xx", "-xxx"]

    def test_h5_f2_count_and_extremes(self):
        got = enumerate_landing_states(5, 2)
        assert len(got) == 10
        assert str(got[0]) == "xxx--"
        assert str(got[-1]) == "--xxx"

    def test_no_empty_slots(self):
        assert enumerate_landing_states(3, 0) == [L("xxx")]

    def test_zero_balls(self):
        assert enumerate_landing_states(3, 3) == [L("---")]

    def test_range_errors(self):
        with pytest.raises(ValueError):
            enumerate_landing_states(3, 4)
        with pytest.raises(ValueError):
            enumerate_landing_states(3, -1)
        with pytest.raises(ValueError):
            enumerate_landing_states(0, 0)

    def test_enumeration_bound(self):
        with pytest.raises(ValueError):
            enumerate_landing_states(17, 0)
        assert len(enumerate_landing_states(17, 0, max_h=17)) == 1


class TestEnumerateTLStates:
    @pytest.mark.parametrize("h,f,expected", [(3, 1, 7), (5, 2, 90), (4, 4, 1)])
    def test_counts(self, h, f, expected):
        assert len(enumerate_tl_states(h, f)) == expected

    def test_all_satisfy_conditions_independent_predicate(self):
        # re-checks validity without going through TLState's own validation
        for h in range(1, 7):
            for f in range(h + 1):
                for s in enumerate_tl_states(h, f):
                    values = {t: v for t, v in enumerate(s.slots, start=1) if v is not None}
                    assert len(values) == h - f
                    assert all(t <= v <= h for t, v in values.items())
                    diffs = [v - t for t, v in values.items()]
                    assert len(set(diffs)) == len(diffs)

    def test_states_are_distinct(self):
        got = enumerate_tl_states(5, 2)
        assert len(set(got)) == len(got)


class TestFiber:
    def test_singleton_fibers(self):
        assert len(fiber(L("--xxx"))) == 1
        assert fiber(L("---")) == [T("---")]

    def test_known_cardinality(self):
        assert len(fiber(L("xxx--"))) == 27

    def test_h3_f1_fiber_contents(self):
        assert [str(t) for t in fiber(L("x-x"))] == ["2-3", "3-3"]

    @given(st.sampled_from([(h, f) for h in range(1, 7) for f in range(h + 1)]))
    def test_fiber_size_equals_weight(self, hf):
        h, f = hf
        for s in enumerate_landing_states(h, f):
            assert len(fiber(s)) == weight(s)

    def test_fibers_partition_the_universe(self):
        h, f = 5, 2
        chunks = [fiber(s) for s in enumerate_landing_states(h, f)]
        flat = [t for chunk in chunks for t in chunk]
        assert sorted(flat) == enumerate_tl_states(h, f)


class TestCommutingSquare:
    @given(st.data())
    def test_project_commutes_with_throws(self, data):
        h = data.draw(st.integers(min_value=1, max_value=6))
        f = data.draw(st.integers(min_value=0, max_value=h))
        universe = enumerate_tl_states(h, f)
        s = data.draw(st.sampled_from(universe))
        if s.slots[0] is None:
            legal = [0]
        else:
            legal = [j for j in range(1, h + 1) if j == h or s.slots[j] is None]
        j = data.draw(st.sampled_from(legal))
        assert project(throw_tl(s, j)) == throw(project(s), j)

    def test_weight_sum_is_tl_count(self):
        for h in range(1, 9):
            for f in range(h + 1):
                total = sum(weight(s) for s in enumerate_landing_states(h, f))
                assert total == len(enumerate_tl_states(h, f))
