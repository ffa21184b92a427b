"""Response objects a driver may return from get_choice.

Each one knows how to render itself as the single RSP line the solver's
bridge expects.  Validation happens at construction, so a bad response
fails inside the driver process with a normal traceback instead of as a
protocol violation on the solver side.
"""

from __future__ import annotations

BOTTOM = 0

SIGNS = ("p", "n", "f")


def _atom(value):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError("atom must be a positive int, got %r" % (value,))
    return value


def _lit(value):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError("literal must be an int, got %r" % (value,))
    return value


class Response:
    """Base class; concrete responses implement line()."""

    def line(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return "<%s %s>" % (type(self).__name__, self.line())

    def __eq__(self, other):
        return type(other) is type(self) and other.line() == self.line()

    def __hash__(self):
        return hash((type(self).__name__, self.line()))


class Choice(Response):
    """A plan of (atom, sign) decisions, taken in order.

    Sign "p" decides the atom positive, "n" negative, "f" leaves the
    polarity to the solver's saved phase.  Entries whose atom is already
    fixed get skipped by the solver; a conflict discards the rest of the
    plan.
    """

    def __init__(self, plan):
        steps = []
        for step in plan:
            atom, sign = step
            if sign not in SIGNS:
                raise ValueError("sign must be one of p/n/f, got %r" % (sign,))
            steps.append((_atom(atom), sign))
        self.plan = tuple(steps)

    def line(self):
        parts = ["RSP", "CHOICE", str(len(self.plan))]
        for atom, sign in self.plan:
            parts.append(str(atom))
            parts.append(sign)
        return " ".join(parts)


class Unroll(Response):
    """Undo the trail until the given literal is unassigned.

    Unroll(BOTTOM) asks for a restart instead.
    """

    def __init__(self, lit):
        self.lit = _lit(lit)

    def line(self):
        return "RSP UNROLL %d" % self.lit


class Fallback(Response):
    """Hand the next n decisions (all of them when n <= 0) to the solver.

    The optional maps seed the solver's own heuristic: starting activity
    per atom, a per-atom multiplier on future activity bumps, and a
    preferred decision sign ("p" or "n") per atom.
    """

    def __init__(self, n, initial_activity=None, bump_factor=None,
                 sign_priority=None):
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValueError("fallback count must be an int, got %r" % (n,))
        self.n = n
        self.initial_activity = self._floats(initial_activity, "activity")
        self.bump_factor = self._floats(bump_factor, "bump factor")
        self.sign_priority = {}
        for atom, sign in (sign_priority or {}).items():
            if sign not in ("p", "n"):
                raise ValueError("sign priority must be p or n, got %r" % (sign,))
            self.sign_priority[_atom(atom)] = sign

    @staticmethod
    def _floats(mapping, what):
        out = {}
        for atom, value in (mapping or {}).items():
            try:
                out[_atom(atom)] = float(value)
            except (TypeError, ValueError):
                raise ValueError("%s must be a number, got %r" % (what, value)) from None
        return out

    def line(self):
        parts = ["RSP", "FALLBACK", str(self.n)]
        for mapping in (self.initial_activity, self.bump_factor):
            parts.append(str(len(mapping)))
            for atom in sorted(mapping):
                parts.append(str(atom))
                parts.append(repr(mapping[atom]))
        parts.append(str(len(self.sign_priority)))
        for atom in sorted(self.sign_priority):
            parts.append(str(atom))
            parts.append(self.sign_priority[atom])
        return " ".join(parts)


class AddClause(Response):
    """Inject a clause into the solver; AddClause(()) refutes outright."""

    def __init__(self, lits):
        self.lits = tuple(_lit(l) for l in lits)
        if any(l == 0 for l in self.lits):
            raise ValueError("0 is not a literal; clauses are 0-terminated on the wire")

    def line(self):
        return "RSP ADDCLAUSE " + " ".join([str(l) for l in self.lits] + ["0"])
