"""Activity bookkeeping: bumps, decay, rescale, deterministic picking."""

import pytest

from drivensat.activity import ActivityState, DEFAULT_DECAY, RESCALE_LIMIT


def always(_):
    return True


def test_learned_clause_bumps_each_atom_once():
    st = ActivityState(range(1, 5))
    st.on_clause_learned([1, -2])
    assert st.activity[1] == 1.0
    assert st.activity[2] == 1.0
    assert st.activity[3] == 0.0
    assert st.inc == pytest.approx(DEFAULT_DECAY)


def test_later_bumps_weigh_more():
    st = ActivityState(range(1, 3))
    st.on_clause_learned([1])
    st.on_clause_learned([2])
    assert st.activity[2] > st.activity[1]


def test_pick_prefers_highest_activity():
    st = ActivityState(range(1, 6))
    st.on_clause_learned([3])
    assert st.pick(always) == 3


def test_pick_skips_assigned_atoms():
    st = ActivityState(range(1, 4))
    st.on_clause_learned([2])
    st.on_clause_learned([1])
    assert st.pick(lambda a: a != 1) == 2


def test_pick_exhausted_returns_none():
    st = ActivityState(range(1, 4))
    assert st.pick(lambda a: False) is None


def test_unassign_makes_atom_pickable_again():
    st = ActivityState(range(1, 4))
    st.on_clause_learned([1])
    assert st.pick(always) == 1
    st.on_unassign(1)
    assert st.pick(always) == 1


def test_argmax_invariant_under_rescale():
    st = ActivityState(range(1, 6), seed=7)
    for lits in ([1, 4], [4], [2, 4, 5]):
        st.on_clause_learned(lits)
    before = st.pick(always)
    st.rescale()
    assert st.pick(always) == before
    assert max(st.activity) < 1.0


def test_overflow_triggers_rescale():
    st = ActivityState(range(1, 3))
    st.set_activity(1, RESCALE_LIMIT / 2)
    st.inc = RESCALE_LIMIT
    st.bump(1)
    assert max(st.activity) < RESCALE_LIMIT
    assert st.inc < RESCALE_LIMIT
    assert st.pick(always) == 1


def test_per_atom_factor_scales_bumps():
    st = ActivityState(range(1, 3))
    st.set_factor(2, 5.0)
    st.on_clause_learned([1, 2])
    assert st.activity[2] == pytest.approx(5 * st.activity[1])


def test_sign_preference_round_trip():
    st = ActivityState(range(1, 3))
    assert st.preferred_sign(1) is None
    st.set_sign(1, "p")
    assert st.preferred_sign(1) == "p"
    st.set_sign(1, "n")
    assert st.preferred_sign(1) == "n"


def test_tie_break_is_seed_deterministic():
    a = ActivityState(range(1, 50), seed=3)
    b = ActivityState(range(1, 50), seed=3)
    # drain both heaps the same way and compare the order
    drained_a, drained_b = [], []
    seen_a, seen_b = set(), set()
    for _ in range(49):
        x = a.pick(lambda v: v not in seen_a)
        seen_a.add(x)
        drained_a.append(x)
        y = b.pick(lambda v: v not in seen_b)
        seen_b.add(y)
        drained_b.append(y)
    assert drained_a == drained_b
    assert sorted(drained_a) == list(range(1, 50))


def test_initial_activities_respected():
    st = ActivityState(range(1, 5), initial={3: 2.0, 4: 1.0})
    assert st.pick(always) == 3
