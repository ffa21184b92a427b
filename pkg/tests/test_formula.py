"""Formula construction, DIMACS round trips, and model checking."""

import io
import random

import pytest
from hypothesis import given, settings, strategies as st

from drivensat import (Clause, DimacsError, DimacsWarning, Formula,
                       check_model, formula_from_ints, normalize_literals,
                       parse_dimacs, render_dimacs)

import oracles
from conftest import EX1_TEXT


def test_parse_running_example(ex1):
    assert ex1.num_atoms == 4
    assert len(ex1.clauses) == 5
    assert [c.lits for c in ex1.clauses] == [
        (1, 2, -3), (1,), (-2,), (3, 4), (3, -4)]
    assert all(c.kind == "input" for c in ex1.clauses)


def test_parse_empty_formula():
    f = parse_dimacs("p cnf 0 0\n")
    assert f.num_atoms == 0
    assert f.clauses == []


def test_parse_accepts_bytes_and_streams():
    assert parse_dimacs(EX1_TEXT.encode()).num_atoms == 4
    assert parse_dimacs(io.StringIO(EX1_TEXT)).num_atoms == 4


def test_parse_comments_blank_lines_and_trailer():
    text = "c a comment\n\np cnf 2 1\nc another\n1 -2 0\n%\n0\ngarbage after trailer\n"
    f = parse_dimacs(text)
    assert [c.lits for c in f.clauses] == [(1, -2)]


def test_parse_tautology_dropped():
    f = parse_dimacs("p cnf 1 1\n1 -1 0\n")
    assert f.clauses == []
    assert f.num_atoms == 1


def test_parse_duplicate_literal_collapsed():
    f = parse_dimacs("p cnf 2 1\n1 1 2 0\n")
    assert f.clauses[0].lits == (1, 2)


def test_parse_clause_spanning_lines():
    f = parse_dimacs("p cnf 3 1\n1\n2\n3 0\n")
    assert f.clauses[0].lits == (1, 2, 3)


def test_parse_count_mismatch_warns():
    with pytest.warns(DimacsWarning):
        f = parse_dimacs("p cnf 2 5\n1 0\n")
    assert len(f.clauses) == 1


def test_parse_unterminated_final_clause_warns():
    with pytest.warns(DimacsWarning):
        f = parse_dimacs("p cnf 2 1\n1 2\n")
    assert f.clauses[0].lits == (1, 2)


@pytest.mark.parametrize("text,fragment", [
    ("1 0\n", "before header"),
    ("p cnf 2 1\np cnf 2 1\n1 0\n", "duplicate header"),
    ("p dnf 2 1\n1 0\n", "bad header"),
    ("p cnf x 1\n1 0\n", "bad header"),
    ("p cnf -2 1\n1 0\n", "negative"),
    ("p cnf 2 1\n3 0\n", "exceeds"),
    ("p cnf 2 1\nfoo 0\n", "integer"),
    ("", "missing"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(DimacsError) as err:
        parse_dimacs(text)
    assert fragment in str(err.value)


def test_parse_error_carries_line_number():
    with pytest.raises(DimacsError) as err:
        parse_dimacs("p cnf 2 2\n1 0\n9 0\n")
    assert err.value.line == 3
    assert "line 3" in str(err.value)


def test_normalize_literals():
    assert normalize_literals([1, 2, 1, 3]) == (1, 2, 3)
    assert normalize_literals([1, -1]) is None
    assert normalize_literals([2, -3, 2, -3]) == (2, -3)
    assert normalize_literals([]) == ()
    # idempotence
    once = normalize_literals([4, -2, 4])
    assert normalize_literals(once) == once


def test_clause_container_protocol():
    c = Clause((1, -2, 3))
    assert len(c) == 3
    assert list(c) == [1, -2, 3]
    assert -2 in c and 2 not in c


def test_formula_rejects_out_of_range_literals():
    with pytest.raises(ValueError):
        Formula(2, [Clause((3,))])
    with pytest.raises(ValueError):
        Formula(2, [Clause((0,))])
    with pytest.raises(ValueError):
        Formula(-1, [])


def test_formula_from_ints_normalizes():
    f = formula_from_ints(3, [[1, -1], [2, 2, 3]])
    assert [c.lits for c in f.clauses] == [(2, 3)]


def test_render_parse_round_trip(ex1):
    again = parse_dimacs(render_dimacs(ex1))
    assert again.num_atoms == ex1.num_atoms
    assert [c.lits for c in again.clauses] == [c.lits for c in ex1.clauses]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_round_trip_random(seed):
    r = random.Random(seed)
    n = r.randint(1, 8)
    f = oracles.random_cnf(r, n, r.randint(0, 12))
    again = parse_dimacs(render_dimacs(f))
    assert again.num_atoms == f.num_atoms
    assert [c.lits for c in again.clauses] == [c.lits for c in f.clauses]


def test_check_model_running_example(ex1):
    good = {1: True, 2: False, 3: True, 4: True}
    assert check_model(ex1, good) is None
    bad = {1: True, 2: False, 3: False, 4: True}
    witness = check_model(ex1, bad)
    assert witness is not None
    assert witness.lits == (3, -4)


def test_check_model_empty_formula():
    assert check_model(Formula(0, []), {}) is None
    assert check_model(Formula(2, []), {1: True, 2: False}) is None


def test_check_model_requires_total_model(ex1):
    with pytest.raises(ValueError):
        check_model(ex1, {1: True, 2: False, 3: True})


def test_check_model_agrees_with_scan(rng):
    for _ in range(80):
        n = rng.randint(1, 7)
        f = oracles.random_cnf(rng, n, rng.randint(0, 10))
        m = {a: rng.random() < 0.5 for a in range(1, n + 1)}
        assert (check_model(f, m) is None) == oracles.check_model_scan(f, m)


def test_lit_tuples_cached(ex1):
    first = ex1.lit_tuples()
    assert first == [c.lits for c in ex1.clauses]
    assert ex1.lit_tuples() is first
