"""Replay a decision plan given as signed literals on the command line.

    drivensat solve file.cnf --driver "extern:python3 plan.py 3 -1 4"

decides atom 3 positive, then atom 1 negative, then atom 4 positive.
The plan atoms are frozen so preprocessing cannot eliminate them;
entries the preprocessor fixed anyway are skipped by the solver.  Once
the plan is spent the rest of the search belongs to the solver's
heuristic.
"""

import sys

from drivensat_sdk import Choice, DriverBase, Fallback, serve


class Plan(DriverBase):

    def __init__(self, lits):
        self.plan = tuple((abs(l), "p" if l > 0 else "n") for l in lits)
        self.sent = False

    def frozen_atoms(self):
        return sorted({atom for atom, _ in self.plan})

    def get_choice(self, view):
        if not self.sent:
            self.sent = True
            return Choice(self.plan)
        return Fallback(0)


if __name__ == "__main__":
    serve(Plan([int(a) for a in sys.argv[1:]]))
