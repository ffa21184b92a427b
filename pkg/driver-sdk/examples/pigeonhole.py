"""Refute n pigeons in m holes without searching, for n > m.

Freezes everything so the clause set reaches us intact, recognizes the
standard grid encoding (atom (i-1)*m + j means pigeon i sits in hole j)
from the SEARCH event, and injects the empty clause when there are more
pigeons than holes.  Anything unrecognized, or a satisfiable grid, is
left to the solver's heuristic.
"""

from drivensat_sdk import AddClause, DriverBase, Fallback, serve


def grid_shape(num_atoms, clauses):
    """(pigeons, holes) if the clauses are exactly the grid encoding."""
    rows = [c for c in clauses if c and c[0] > 0]
    n = len(rows)
    if n == 0 or num_atoms == 0:
        return None
    m = len(rows[0])
    if m == 0 or n * m != num_atoms:
        return None
    for i, row in enumerate(rows):
        if row != tuple(range(i * m + 1, i * m + m + 1)):
            return None
    pairs = [c for c in clauses if c and c[0] < 0]
    if n + len(pairs) != len(clauses):
        return None
    got = set()
    for c in pairs:
        if len(c) != 2 or c[1] > 0:
            return None
        got.add(frozenset(c))
    if len(got) != len(pairs):
        return None
    want = set()
    for j in range(1, m + 1):
        column = [(i - 1) * m + j for i in range(1, n + 1)]
        for a in range(n):
            for b in range(a + 1, n):
                want.add(frozenset((-column[a], -column[b])))
    if got != want:
        return None
    return n, m


class Pigeonhole(DriverBase):

    subscriptions = ("SEARCH",)

    def __init__(self):
        self.shape = None

    def frozen_atoms(self):
        return range(1, self.view.num_atoms + 1)

    def on_search(self, num_atoms, clauses):
        self.shape = grid_shape(num_atoms, clauses)

    def get_choice(self, view):
        if self.shape is not None:
            n, m = self.shape
            if n > m:
                return AddClause(())
        return Fallback(0)


if __name__ == "__main__":
    serve(Pigeonhole())
