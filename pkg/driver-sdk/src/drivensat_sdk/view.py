"""Read-only mirror of the solver's current assignment.

The solver ships its trail incrementally: ASG deltas ahead of each
choice request, plus one UNROLLLIT notice per literal removed while
backtracking.  serve() folds those into one of these objects and hands
it to the driver, which must treat it as read-only.
"""


class InterpretationView:

    def __init__(self):
        self.num_atoms = 0
        self._trail = []  # [(lit, level)] in assignment order
        self._value = {}  # atom -> bool
        self._level = {}  # atom -> int

    def __len__(self):
        return len(self._trail)

    @property
    def trail(self):
        """The mirrored trail as a tuple of (literal, level) pairs."""
        return tuple(self._trail)

    def value(self, atom):
        """True or False when the atom is assigned, None otherwise."""
        return self._value.get(atom)

    def level(self, atom):
        """Decision level the atom was assigned at, None if unassigned."""
        return self._level.get(atom)

    def decision_level(self):
        return self._trail[-1][1] if self._trail else 0

    def decisions(self):
        """Decision literals of the current trail, outermost first.

        The first literal seen at each new level is the decision; level
        0 entries are all forced.
        """
        out = []
        last = 0
        for lit, lv in self._trail:
            if lv > last:
                out.append(lit)
            last = lv
        return tuple(out)

    def unassigned(self):
        """Yield the atoms (1..num_atoms) with no mirrored value."""
        for atom in range(1, self.num_atoms + 1):
            if atom not in self._value:
                yield atom

    # maintenance, called by the serve loop only

    def _assign(self, lit, level):
        atom = abs(lit)
        self._trail.append((lit, level))
        self._value[atom] = lit > 0
        self._level[atom] = level

    def _unassign_top(self, lit):
        # The solver reports every removed literal, including ones it
        # never transmitted (assigned after the last choice request), so
        # only a matching top counts.
        if self._trail and self._trail[-1][0] == lit:
            self._trail.pop()
            atom = abs(lit)
            del self._value[atom]
            del self._level[atom]
            return True
        return False
