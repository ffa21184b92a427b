"""Bundled drivers and reusable driver scaffolding.

ActivityDriver mirrors the engine's own fallback heuristic through events
only, so a run driven by it is decision-for-decision identical to a run that
answers an immediate permanent Fallback.  PigeonholeDriver refutes
pigeonhole formulas in one response.  TrailMirrorDriver is the base for
drivers that track the assignment incrementally, exactly the way a wire
client has to.
"""

from __future__ import annotations

from .activity import ActivityState
from .formula import Formula, formula_from_ints
from .protocol import (AddClause, Choice, Driver, EventKind, Fallback, Freeze,
                       FreezeRequest, LearnClauseEvent, SearchEvent,
                       UnrollLitEvent)

FALLBACK_NOW = Fallback(0)


class ActivityDriver(Driver):
    """Activity-ordered branching fed purely by protocol traffic.

    Activities start at zero, every learned clause bumps its atoms, bumps
    grow by the configured decay, and the undefined atom with the highest
    activity is chosen with its negative sign (unless a sign preference is
    installed).  Ties fall to a seeded random priority.
    """

    def __init__(self, seed: int = 0, activity_from_formula: bool = False):
        self.seed = seed
        self.activity_from_formula = activity_from_formula
        self.state: ActivityState | None = None

    def subscription(self) -> EventKind:
        # UnrollLit keeps the activity order's heap in sync with unassignments.
        return EventKind.SEARCH | EventKind.LEARN_CLAUSE | EventKind.UNROLL_LIT

    def on_event(self, event) -> None:
        if isinstance(event, SearchEvent):
            initial = None
            if self.activity_from_formula:
                initial = {}
                for cl in event.clauses:
                    for lit in cl:
                        initial[abs(lit)] = initial.get(abs(lit), 0) + 1
            self.state = ActivityState(event.active_atoms, seed=self.seed,
                                       initial=initial)
        elif isinstance(event, LearnClauseEvent):
            if self.state is not None:
                self.state.on_clause_learned(event.lits)
        elif isinstance(event, UnrollLitEvent):
            if self.state is not None:
                self.state.on_unassign(abs(event.lit))

    def answer(self, request):
        if isinstance(request, FreezeRequest):
            return Freeze(())
        if self.state is None:
            return FALLBACK_NOW
        view = request.view
        atom = self.state.pick(lambda a: view.value(a) is None)
        if atom is None:
            return FALLBACK_NOW  # nothing left for us; let the engine finish
        sign = self.state.preferred_sign(atom) or "n"
        return Choice(((atom, sign),))


def pigeonhole_formula(n: int, m: int) -> Formula:
    """CNF placing n pigeons into m holes: atom (i-1)*m + j means pigeon i in hole j."""
    if n < 0 or m < 0:
        raise ValueError("pigeon and hole counts must be >= 0")
    clauses: list[list[int]] = []
    for i in range(1, n + 1):
        clauses.append([(i - 1) * m + j for j in range(1, m + 1)])
    for j in range(1, m + 1):
        for i1 in range(1, n + 1):
            for i2 in range(i1 + 1, n + 1):
                clauses.append([-((i1 - 1) * m + j), -((i2 - 1) * m + j)])
    return formula_from_ints(n * m, clauses)


def recognize_pigeonhole(f: Formula) -> tuple[int, int] | None:
    """Detect the pigeonhole grid structure; returns (pigeons, holes) or None."""
    tuples = f.lit_tuples()
    total = len(tuples)
    if total == 0 or f.num_atoms == 0:
        return None
    rows = [t for t in tuples if t and t[0] > 0]
    n = len(rows)
    if n == 0:
        return None
    m = len(rows[0])
    if m == 0 or n * m != f.num_atoms:
        return None
    base = 0
    for row in rows:
        if row != tuple(range(base + 1, base + m + 1)):
            return None
        base += m
    pairs = [t for t in tuples if t and t[0] < 0]
    if n + len(pairs) != total or len(pairs) != m * n * (n - 1) // 2:
        return None
    if any(len(t) != 2 or t[1] > 0 for t in pairs):
        return None
    # Encode each pair as lo*K+hi with lo < hi; there are exactly
    # m * C(n, 2) distinct same-column pairs, so distinctness plus the
    # column congruence plus the count pins down the whole set.
    k = f.num_atoms + 1
    keys = {(-t[0]) * k - t[1] if t[0] > t[1] else (-t[1]) * k - t[0]
            for t in pairs}
    if len(keys) != len(pairs):
        return None
    if any((key % k - key // k) % m for key in keys):
        return None
    return n, m


class PigeonholeDriver(Driver):
    """Refutes over-constrained pigeonhole formulas at the first choice.

    Recognition runs once at construction; anything unrecognizable makes the
    driver immediately hand control back to the engine.
    """

    def __init__(self, formula: Formula):
        self.shape = recognize_pigeonhole(formula)
        self.num_atoms = formula.num_atoms

    def answer(self, request):
        if isinstance(request, FreezeRequest):
            return Freeze(tuple(request.atoms))
        if self.shape is not None:
            n, m = self.shape
            if n > m:
                return AddClause(())  # falsum: more pigeons than holes
        return FALLBACK_NOW


class FallbackNowDriver(Driver):
    """Cedes every decision to the engine's heuristic at the first choice."""

    def answer(self, request):
        if isinstance(request, FreezeRequest):
            return Freeze(())
        return FALLBACK_NOW


class ScriptedDriver(Driver):
    """Replays a fixed response list, then answers a permanent Fallback.

    Useful for tests and as the in-process twin of a scripted wire child.
    """

    def __init__(self, responses, frozen=(), events: EventKind = EventKind(0)):
        self.responses = list(responses)
        self.frozen = tuple(frozen)
        self.events = events
        self.log: list = []

    def subscription(self) -> EventKind:
        return self.events

    def on_event(self, event) -> None:
        self.log.append(event)

    def answer(self, request):
        if isinstance(request, FreezeRequest):
            return Freeze(self.frozen)
        if self.responses:
            return self.responses.pop(0)
        return FALLBACK_NOW


class TrailMirrorDriver(Driver):
    """Base for drivers that keep their own copy of the interpretation.

    The mirror is fed the same way a wire client is fed: assignment deltas at
    each choice request plus one UnrollLit per removed entry.  Entries the
    mirror never saw are ignored on removal; entries it holds are always
    removed from the top.
    """

    def __init__(self):
        self._mirror: list[tuple[int, int]] = []
        self._value: dict[int, bool] = {}
        self._level: dict[int, int] = {}

    # subclass surface
    def events(self) -> EventKind:
        return EventKind(0)

    def frozen_atoms(self, request: FreezeRequest) -> tuple[int, ...]:
        return ()

    def get_choice(self, view):
        raise NotImplementedError

    def on_assigned(self, lit: int, level: int) -> None:
        pass

    def on_unassigned(self, lit: int) -> None:
        pass

    def mirror_value(self, atom: int) -> bool | None:
        return self._value.get(atom)

    def mirror_entries(self) -> list[tuple[int, int]]:
        return list(self._mirror)

    # driver plumbing
    def subscription(self) -> EventKind:
        return self.events() | EventKind.UNROLL_LIT

    def on_event(self, event) -> None:
        if type(event) is UnrollLitEvent:
            m = self._mirror
            if m:
                top = m[-1][0]
                lit = event.lit
                if top == lit or top == -lit:
                    m.pop()
                    atom = top if top > 0 else -top
                    del self._value[atom]
                    del self._level[atom]
                    self.on_unassigned(top)
            return
        self.handle_event(event)

    def handle_event(self, event) -> None:
        """Non-unroll events after mirror maintenance; subclasses may extend.

        Unroll notifications arrive through on_unassigned instead, once per
        entry the mirror actually held.
        """

    def answer(self, request):
        if isinstance(request, FreezeRequest):
            return Freeze(self.frozen_atoms(request))
        view = request.view
        for lit, level in view.trail_suffix(len(self._mirror)):
            self._mirror.append((lit, level))
            atom = abs(lit)
            self._value[atom] = lit > 0
            self._level[atom] = level
            self.on_assigned(lit, level)
        return self.get_choice(view)
