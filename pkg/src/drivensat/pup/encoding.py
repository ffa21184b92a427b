"""CNF encoding of partner-units instances.

Atom layout, in allocation order:

* ``zu(z, u)``  zone z runs on unit u
* ``su(s, u)``  sensor s runs on unit u
* ``partner(u, v)`` with u < v: units u and v are connected
* counter auxiliaries for the capacity constraints

The capacity constraints use the sequential-counter at-most-k circuit,
so the encoding stays polynomial: at-most-UCap over each unit's zone
atoms and sensor atoms, and at-most-IUCap over each unit's partner
atoms.  Placement atoms get a pairwise exactly-one per zone and per
sensor, which is fine at the per-vertex arity (one atom per unit).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..formula import Clause, Formula
from .model import PupInstance, PupSolution


@dataclass
class PupEncoding:
    inst: PupInstance
    zu: dict          # (zone_id, unit) -> atom
    su: dict          # (sensor_id, unit) -> atom
    partner: dict     # (u, v) with u < v -> atom
    num_atoms: int    # total, including counter auxiliaries

    def zu_atom(self, z, u) -> int:
        return self.zu[(z, u)]

    def su_atom(self, s, u) -> int:
        return self.su[(s, u)]

    def partner_atom(self, u: int, v: int) -> int:
        if u == v:
            raise KeyError("a unit is not its own partner")
        return self.partner[(u, v) if u < v else (v, u)]

    def placement_atoms(self) -> list:
        """All zu/su/partner atoms, allocation order (no auxiliaries)."""
        out = list(self.zu.values())
        out.extend(self.su.values())
        out.extend(self.partner.values())
        return out

    def decode(self, model: set) -> PupSolution:
        """Read a solution back out of a model (set of true atoms)."""
        sol = PupSolution()
        for (z, u), atom in self.zu.items():
            if atom in model:
                sol.zone_unit[z] = u
        for (s, u), atom in self.su.items():
            if atom in model:
                sol.sensor_unit[s] = u
        for pair, atom in self.partner.items():
            if atom in model:
                sol.partners.add(pair)
        return sol


def _at_most_k(lits: list, k: int, fresh, clauses: list):
    """Sequential-counter at-most-k over lits; appends clauses.

    ``fresh()`` allocates a new auxiliary atom.  Standard construction:
    s[i][j] means "at least j of the first i+1 literals are true".
    """
    n = len(lits)
    if n <= k:
        return
    if k == 0:
        for x in lits:
            clauses.append((-x,))
        return
    # registers for positions 0..n-2
    reg = [[fresh() for _ in range(k)] for _ in range(n - 1)]
    clauses.append((-lits[0], reg[0][0]))
    for j in range(1, k):
        clauses.append((-reg[0][j],))
    for i in range(1, n - 1):
        clauses.append((-lits[i], reg[i][0]))
        clauses.append((-reg[i - 1][0], reg[i][0]))
        for j in range(1, k):
            clauses.append((-lits[i], -reg[i - 1][j - 1], reg[i][j]))
            clauses.append((-reg[i - 1][j], reg[i][j]))
        clauses.append((-lits[i], -reg[i - 1][k - 1]))
    clauses.append((-lits[n - 1], -reg[n - 2][k - 1]))


def encode(inst: PupInstance) -> tuple:
    """Build the CNF for an instance; returns (Formula, PupEncoding)."""
    units = range(1, inst.num_units + 1)
    next_atom = 1

    zu = {}
    for z in inst.zones:
        for u in units:
            zu[(z, u)] = next_atom
            next_atom += 1
    su = {}
    for s in inst.sensors:
        for u in units:
            su[(s, u)] = next_atom
            next_atom += 1
    partner = {}
    for u in units:
        for v in range(u + 1, inst.num_units + 1):
            partner[(u, v)] = next_atom
            next_atom += 1

    clauses = []

    # exactly one unit per zone and per sensor
    for z in inst.zones:
        row = [zu[(z, u)] for u in units]
        clauses.append(tuple(row))
        for i in range(len(row)):
            for j in range(i + 1, len(row)):
                clauses.append((-row[i], -row[j]))
    for s in inst.sensors:
        row = [su[(s, u)] for u in units]
        clauses.append(tuple(row))
        for i in range(len(row)):
            for j in range(i + 1, len(row)):
                clauses.append((-row[i], -row[j]))

    counter = [next_atom]

    def fresh():
        atom = counter[0]
        counter[0] += 1
        return atom

    # unit capacity: at most UCap zones and at most UCap sensors per unit
    for u in units:
        _at_most_k([zu[(z, u)] for z in inst.zones], inst.ucap, fresh, clauses)
        _at_most_k([su[(s, u)] for s in inst.sensors], inst.ucap, fresh, clauses)

    # an edge whose endpoints sit on different units forces the partner atom
    for z, s in inst.edges:
        for u in units:
            for v in units:
                if u == v:
                    continue
                pa = partner[(u, v) if u < v else (v, u)]
                clauses.append((-zu[(z, u)], -su[(s, v)], pa))

    # interconnection capacity: at most IUCap partners per unit
    for u in units:
        row = [partner[(u, v) if u < v else (v, u)] for v in units if v != u]
        _at_most_k(row, inst.iucap, fresh, clauses)

    formula = Formula(counter[0] - 1,
                      [Clause(lits) for lits in clauses])
    enc = PupEncoding(inst, zu, su, partner, num_atoms=counter[0] - 1)
    return formula, enc
