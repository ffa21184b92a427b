"""Core search loop: propagation, learning, restarts, deletion, budgets."""

import random
import time

import pytest

from drivensat import (SolverConfig, check_model, formula_from_ints,
                       parse_dimacs, solve)
from drivensat.engine import Engine, luby
from drivensat.drivers import (ActivityDriver, FallbackNowDriver,
                               ScriptedDriver, pigeonhole_formula)
from drivensat.protocol import (BOTTOM, Choice, ConflictEvent, DeletionEvent,
                                EventKind, Fallback, IncoChoiceEvent,
                                LearnClauseEvent, RestartEvent, UnrollLitEvent)

import oracles
from conftest import EX1_TEXT


def test_running_example_is_sat(ex1):
    res = solve(ex1, ActivityDriver())
    assert res.status == oracles.SAT
    assert check_model(ex1, res.model) is None


def test_contradictory_units_unsat_without_search():
    f = formula_from_ints(1, [[1], [-1]])
    res = solve(f, ActivityDriver())
    assert res.status == oracles.UNSAT
    assert res.stats.decisions == 0
    assert res.model is None


def test_small_pigeonhole_unsat():
    res = solve(pigeonhole_formula(3, 2), ActivityDriver())
    assert res.status == oracles.UNSAT


def test_prepare_fixes_unit_consequences(ex1):
    eng = Engine(ex1, ScriptedDriver([], frozen=range(1, 5)))
    assert eng.prepare()
    assert set(eng.trail) == {1, -2}
    assert eng.levels[1] == 0 and eng.levels[2] == 0
    assert eng.trail_lim == []


def test_decision_into_conflict_reports_the_decision(ex1):
    drv = ScriptedDriver([Choice(((3, "n"),))], frozen=range(1, 5),
                         events=EventKind.CONFLICT | EventKind.INCO_CHOICE)
    res = solve(ex1, drv)
    assert res.status == oracles.SAT
    conflicts = [e for e in drv.log if isinstance(e, ConflictEvent)]
    assert conflicts and conflicts[0].lit == -3
    # the decision itself is reported right after the conflict it caused
    i = drv.log.index(conflicts[0])
    assert isinstance(drv.log[i + 1], IncoChoiceEvent)
    assert drv.log[i + 1].lit == -3


def test_learned_unit_from_textbook_chain():
    # deciding a=true forces b and c, then the two tail clauses clash;
    # resolution on the conflict yields the unit (-a)
    f = formula_from_ints(4, [[-1, 2], [-1, 3], [-2, -3, 4], [-2, -3, -4]])
    drv = ScriptedDriver([Choice(((1, "p"),))], frozen=range(1, 5),
                         events=EventKind.LEARN_CLAUSE)
    res = solve(f, drv)
    assert res.status == oracles.SAT
    learned = [e for e in drv.log if isinstance(e, LearnClauseEvent)]
    assert learned and learned[0].lits == (-1,)


def test_level_zero_conflict_reports_bottom():
    f = formula_from_ints(2, [[1, 2], [1, -2], [-1, 2], [-1, -2]])
    drv = ScriptedDriver([], frozen=(1, 2), events=EventKind.CONFLICT)
    res = solve(f, drv)
    assert res.status == oracles.UNSAT
    assert any(isinstance(e, ConflictEvent) and e.lit == BOTTOM for e in drv.log)


def test_learned_clauses_match_independent_replay(rng):
    """Every learned clause equals a from-scratch first-UIP resolution."""
    checked = 0
    for _ in range(40):
        n = rng.randint(6, 12)
        f = oracles.random_cnf(rng, n, int(4.3 * n))
        eng = Engine(f, ActivityDriver())
        seen = []

        def hook(snapshot, confl_lits, learned, bj):
            want, want_bj = oracles.replay_first_uip(snapshot, confl_lits)
            assert set(learned) == want
            assert bj == want_bj
            seen.append(1)

        eng.on_learn_hook = hook
        eng.solve()
        checked += len(seen)
    assert checked > 100


def test_backjump_unrolls_every_removed_literal(rng):
    f = oracles.random_cnf(rng, 10, 43)
    unrolled = []

    class Counting(ActivityDriver):
        def subscription(self):
            return super().subscription() | EventKind.UNROLL_LIT

        def on_event(self, event):
            if isinstance(event, UnrollLitEvent):
                unrolled.append(event.lit)
            super().on_event(event)

    eng = Engine(f, Counting())
    removed_total = []
    eng.on_backjump_hook = lambda removed: removed_total.append(removed)
    eng.solve()
    assert sum(removed_total) == len(unrolled)


def test_luby_sequence_matches_reference():
    assert [luby(i) for i in range(1, 201)] == \
        [oracles.luby_reference(i) for i in range(1, 201)]


def test_restarts_fire_and_are_announced(rng):
    f = oracles.random_cnf(rng, 12, 52)

    seen = []

    class Watching(ActivityDriver):
        def subscription(self):
            return super().subscription() | EventKind.RESTART

        def on_event(self, event):
            if isinstance(event, RestartEvent):
                seen.append(event)
            super().on_event(event)

    res = solve(f, Watching(), SolverConfig(restart_base=1))
    restarts = len(seen)
    assert res.stats.restarts == restarts
    if res.stats.conflicts >= 2:
        assert restarts > 0


def test_deletion_reported_and_counted(rng):
    f = oracles.random_cnf(rng, 14, 60)

    dropped = []

    class Watching(ActivityDriver):
        def subscription(self):
            return super().subscription() | EventKind.DELETION

        def on_event(self, event):
            if isinstance(event, DeletionEvent):
                dropped.append(event.lits)
            super().on_event(event)

    res = solve(f, Watching(), SolverConfig(deletion_interval=10))
    assert res.stats.deleted == len(dropped)


def test_zero_conflict_budget_means_unknown():
    res = solve(pigeonhole_formula(5, 4), ActivityDriver(),
                SolverConfig(conflict_budget=0))
    assert res.status == oracles.UNKNOWN
    assert res.model is None


def test_budget_stops_at_the_limit():
    res = solve(pigeonhole_formula(8, 7), ActivityDriver(),
                SolverConfig(conflict_budget=50))
    assert res.status == oracles.UNKNOWN
    assert res.stats.conflicts == 50


def test_stop_check_aborts():
    t0 = time.monotonic()
    res = solve(pigeonhole_formula(9, 8), ActivityDriver(),
                SolverConfig(stop_check=lambda: time.monotonic() - t0 > 0.05))
    assert res.status == oracles.UNKNOWN


def test_decision_sequence_is_deterministic(rng):
    f = oracles.random_cnf(rng, 12, 50)
    runs = [solve(f, ActivityDriver(), SolverConfig(record_decisions=True))
            for _ in range(2)]
    assert runs[0].decision_seq == runs[1].decision_seq
    assert runs[0].status == runs[1].status


def test_recorded_decisions_count_matches_stats(rng):
    f = oracles.random_cnf(rng, 10, 40)
    res = solve(f, ActivityDriver(), SolverConfig(record_decisions=True))
    assert len(res.decision_seq) == res.stats.decisions


def test_trail_invariants_hold_through_search(rng):
    """Reasons sit earlier on the trail and never above their own level."""
    f = oracles.random_cnf(rng, 10, 42)
    eng = Engine(f, ActivityDriver())

    def hook(snapshot, confl_lits, learned, bj):
        pos = {lit: i for i, (lit, _, _) in enumerate(snapshot)}
        lvl = {abs(lit): level for lit, level, _ in snapshot}
        for lit, level, reason in snapshot:
            if reason is None:
                continue
            assert lit in reason
            for other in reason:
                if other == lit:
                    continue
                assert -other in pos and pos[-other] < pos[lit]
                assert lvl[abs(other)] <= level

    eng.on_learn_hook = hook
    eng.solve()


def test_solver_config_rejects_bad_values():
    with pytest.raises(ValueError):
        SolverConfig(restart_base=0).validate()
    with pytest.raises(ValueError):
        SolverConfig(deletion_interval=0).validate()
    with pytest.raises(ValueError):
        SolverConfig(conflict_budget=-1).validate()


def test_random_batch_agrees_with_brute_force(rng):
    for _ in range(60):
        n = rng.randint(3, 10)
        f = oracles.random_cnf(rng, n, rng.randint(1, 5 * n))
        res = solve(f, ActivityDriver())
        assert res.status == oracles.brute_force_status(f)
        if res.status == oracles.SAT:
            assert check_model(f, res.model) is None
