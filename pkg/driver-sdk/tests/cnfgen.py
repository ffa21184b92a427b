"""DIMACS text builders for the test suite.

Standalone on purpose: these write the formats directly rather than
going through any solver code, so the tests exercise the CLI and the
wire exactly as an outside tool would.
"""

import random


def php_dimacs(pigeons, holes):
    """The grid encoding: atom (i-1)*holes + j puts pigeon i in hole j."""
    clauses = []
    for i in range(1, pigeons + 1):
        clauses.append([(i - 1) * holes + j for j in range(1, holes + 1)])
    for j in range(1, holes + 1):
        for i1 in range(1, pigeons + 1):
            for i2 in range(i1 + 1, pigeons + 1):
                clauses.append([-((i1 - 1) * holes + j),
                                -((i2 - 1) * holes + j)])
    return dimacs(pigeons * holes, clauses)


def random3_dimacs(num_atoms, num_clauses, seed):
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        atoms = rng.sample(range(1, num_atoms + 1), 3)
        clauses.append([a if rng.random() < 0.5 else -a for a in atoms])
    return dimacs(num_atoms, clauses)


def dimacs(num_atoms, clauses):
    out = ["p cnf %d %d" % (num_atoms, len(clauses))]
    for c in clauses:
        out.append(" ".join(str(l) for l in c) + " 0")
    return "\n".join(out) + "\n"
