"""Preprocessing: top-level unit propagation, clause rewriting, and bounded
variable elimination, with records for rebuilding full models afterwards."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .formula import Formula

STATUS_ACTIVE = "active"
STATUS_FIXED = "fixed"
STATUS_ELIMINATED = "eliminated"


@dataclass
class SimplifiedFormula:
    """Outcome of simplify(): reduced clauses plus atom bookkeeping.

    elim_records holds, per eliminated atom in elimination order, the clauses
    it occurred in at that moment; replaying them in reverse extends any model
    of the reduced formula to the original atoms.
    """

    num_atoms: int
    clauses: list[tuple[int, ...]]
    fixed: dict[int, bool]
    elim_records: list[tuple[int, tuple[tuple[int, ...], ...]]] = field(default_factory=list)
    inconsistent: bool = False

    @property
    def eliminated(self) -> set[int]:
        return {atom for atom, _ in self.elim_records}

    def status(self, atom: int) -> str:
        if atom in self.fixed:
            return STATUS_FIXED
        for rec_atom, _ in self.elim_records:
            if rec_atom == atom:
                return STATUS_ELIMINATED
        return STATUS_ACTIVE

    def active_atoms(self) -> list[int]:
        gone = self.eliminated
        return [a for a in range(1, self.num_atoms + 1)
                if a not in self.fixed and a not in gone]

    def extend_model(self, model: dict[int, bool]) -> dict[int, bool]:
        """Extend a model over the active atoms to all original atoms."""
        full = dict(model)
        full.update(self.fixed)
        for atom, clauses in reversed(self.elim_records):
            forced = None
            for cl in clauses:
                satisfied = False
                own = None
                for lit in cl:
                    a = abs(lit)
                    if a == atom:
                        own = lit
                        continue
                    if full[a] == (lit > 0):
                        satisfied = True
                        break
                if satisfied or own is None:
                    continue
                need = own > 0
                if forced is not None and forced != need:
                    raise AssertionError(f"elimination record for atom {atom} is contradictory")
                forced = need
            full[atom] = False if forced is None else forced
        return full


def _propagate_units(clauses: list[tuple[int, ...] | None],
                     assignment: dict[int, bool]) -> bool:
    """Textual unit propagation to fixpoint; returns False on conflict.

    Satisfied clauses become None in place; others are shortened.
    """
    changed = True
    while changed:
        changed = False
        for i, cl in enumerate(clauses):
            if cl is None:
                continue
            out = []
            satisfied = False
            for lit in cl:
                val = assignment.get(abs(lit))
                if val is None:
                    out.append(lit)
                elif val == (lit > 0):
                    satisfied = True
                    break
            if satisfied:
                clauses[i] = None
                continue
            if not out:
                return False
            if len(out) == 1:
                assignment[abs(out[0])] = out[0] > 0
                clauses[i] = None
                changed = True
            elif len(out) != len(cl):
                clauses[i] = tuple(out)
    return True


def simplify(f: Formula, frozen: Iterable[int] = ()) -> SimplifiedFormula:
    """Simplify f at the top level, never touching frozen atoms by elimination."""
    frozen = set(frozen)
    raw = f.lit_tuples()

    # Fast path: nothing to fix and nothing eliminable.  The cached tuple
    # list is shared unmodified; everyone downstream treats it as read-only.
    if frozen.issuperset(f.atoms()) and all(len(t) > 1 for t in raw):
        return SimplifiedFormula(f.num_atoms, raw, {})

    assignment: dict[int, bool] = {}
    work: list[tuple[int, ...] | None] = list(raw)
    if not _propagate_units(work, assignment):
        return SimplifiedFormula(f.num_atoms, [], dict(assignment), inconsistent=True)

    alive: list[tuple[int, ...] | None] = [c for c in work if c is not None]
    records: list[tuple[int, tuple[tuple[int, ...], ...]]] = []

    # Bounded variable elimination, one ascending sweep.  An atom goes only
    # when the resolvent count does not exceed the occurrence count.
    occ: dict[int, list[int]] = {}
    for idx, cl in enumerate(alive):
        for lit in cl:
            occ.setdefault(lit, []).append(idx)

    def live(indices: list[int], lit: int) -> list[int]:
        return [i for i in indices if alive[i] is not None and lit in alive[i]]

    for atom in range(1, f.num_atoms + 1):
        if atom in frozen or atom in assignment:
            continue
        pos = live(occ.get(atom, []), atom)
        neg = live(occ.get(-atom, []), -atom)
        if not pos and not neg:
            continue  # unconstrained atoms stay active for the search to fix
        resolvents: list[tuple[int, ...]] = []
        seen: set[tuple[int, ...]] = set()
        ok = True
        for i in pos:
            for j in neg:
                merged: list[int] = []
                taut = False
                for lit in alive[i] + alive[j]:
                    if abs(lit) == atom:
                        continue
                    if -lit in merged:
                        taut = True
                        break
                    if lit not in merged:
                        merged.append(lit)
                if taut:
                    continue
                key = tuple(sorted(merged))
                if key not in seen:
                    seen.add(key)
                    resolvents.append(tuple(merged))
                if len(resolvents) > len(pos) + len(neg):
                    ok = False
                    break
            if not ok:
                break
        if not ok or len(resolvents) > len(pos) + len(neg):
            continue
        removed = tuple(alive[i] for i in pos + neg)
        records.append((atom, removed))
        for i in pos + neg:
            alive[i] = None
        for res in resolvents:
            alive.append(res)
            idx = len(alive) - 1
            for lit in res:
                occ.setdefault(lit, []).append(idx)

    # Resolvents may have produced new units.
    final: list[tuple[int, ...] | None] = [c for c in alive if c is not None]
    if not _propagate_units(final, assignment):
        return SimplifiedFormula(f.num_atoms, [], dict(assignment),
                                 records, inconsistent=True)

    clauses = [c for c in final if c is not None]
    return SimplifiedFormula(f.num_atoms, clauses, dict(assignment), records)
