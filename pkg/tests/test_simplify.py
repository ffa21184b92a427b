"""Preprocessing: unit propagation, variable elimination, model rebuild."""

import random

from drivensat import check_model, formula_from_ints, parse_dimacs, simplify

import oracles
from conftest import EX1_TEXT


def test_running_example_fixes_units():
    simp = simplify(parse_dimacs(EX1_TEXT))
    assert simp.fixed[1] is True
    assert simp.fixed[2] is False
    assert not simp.inconsistent


def test_freeze_everything_blocks_elimination(ex1):
    simp = simplify(ex1, frozen=range(1, 5))
    assert simp.eliminated == set()
    assert simp.fixed == {1: True, 2: False}
    # only c and d survive, in two two-literal clauses
    assert sorted(tuple(sorted(c)) for c in simp.clauses) == [(-4, 3), (3, 4)]


def test_unit_conflict_is_inconsistent():
    simp = simplify(formula_from_ints(1, [[1], [-1]]))
    assert simp.inconsistent


def test_no_units_no_elimination_fast_path():
    f = formula_from_ints(3, [[1, 2], [2, 3], [-1, -3]])
    simp = simplify(f, frozen=(1, 2, 3))
    assert simp.clauses == f.lit_tuples()
    assert simp.fixed == {} and simp.eliminated == set()


def test_elimination_removes_an_atom():
    # atom 1 has one positive and one negative occurrence; resolving them
    # gives a single clause, so it is eliminated
    f = formula_from_ints(3, [[1, 2], [-1, 3], [2, 3]])
    simp = simplify(f)
    assert 1 in simp.eliminated
    assert simp.status(1) == "eliminated"
    assert 1 not in {abs(l) for c in simp.clauses for l in c}


def test_frozen_atom_never_eliminated():
    f = formula_from_ints(3, [[1, 2], [-1, 3], [2, 3]])
    simp = simplify(f, frozen=(1,))
    assert 1 not in simp.eliminated


def test_status_and_active_atoms(ex1):
    simp = simplify(ex1)
    assert simp.status(1) == "fixed"
    for a in simp.active_atoms():
        assert simp.status(a) == "active"
    assert set(simp.active_atoms()).isdisjoint(simp.fixed)
    assert set(simp.active_atoms()).isdisjoint(simp.eliminated)


def test_extend_model_running_example(ex1):
    simp = simplify(ex1)
    # whatever survived, forcing the remaining atoms true must extend to a
    # model of the original formula when c=true satisfies the tail clauses
    partial = {a: True for a in simp.active_atoms()}
    full = simp.extend_model(partial)
    assert check_model(ex1, full) is None


def test_status_preserved_and_models_extend(rng):
    """Simplification keeps satisfiability and its models lift back."""
    for _ in range(150):
        n = rng.randint(1, 9)
        f = oracles.random_cnf(rng, n, rng.randint(0, 14), width=rng.choice((1, 2, 3)))
        frozen = [a for a in range(1, n + 1) if rng.random() < 0.3]
        want = oracles.brute_force_status(f)
        simp = simplify(f, frozen)
        assert not set(frozen) & simp.eliminated
        if simp.inconsistent:
            assert want == "UNSATISFIABLE"
            continue
        reduced = formula_from_ints(n, simp.clauses)
        got = oracles.brute_force_status(reduced)
        assert got == want
        if want == "SATISFIABLE":
            partial = oracles.brute_force_model(reduced)
            # keep only assignments over atoms that still matter
            partial = {a: v for a, v in partial.items()
                       if a not in simp.fixed and a not in simp.eliminated}
            full = simp.extend_model(partial)
            assert check_model(f, full) is None


def test_fixed_atoms_absent_from_clauses(rng):
    for _ in range(40):
        f = oracles.random_cnf(rng, 6, 10, width=rng.choice((1, 2, 3)))
        simp = simplify(f)
        if simp.inconsistent:
            continue
        atoms = {abs(l) for c in simp.clauses for l in c}
        assert atoms.isdisjoint(simp.fixed)
