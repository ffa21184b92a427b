"""Messages exchanged between the search engine and a branching driver.

The engine talks to exactly one driver per solve.  Traffic is synchronous:
the engine emits events (fire-and-forget, filtered by the driver's
subscription mask) and issues requests, each of which the driver must answer
with exactly one response of the matching family:

* ``FreezeRequest``  -> ``Freeze``
* ``ChoiceRequest``  -> ``Choice`` | ``Unroll`` | ``Fallback`` | ``AddClause``

Any other pairing is a ProtocolViolation.  The integer 0 (BOTTOM) stands in
for the reserved falsum pseudo-atom wherever a literal slot may carry it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntFlag
from typing import Any, ClassVar, Mapping

BOTTOM = 0

CHOICE_SIGNS = ("p", "n", "f")  # positive, negative, free (saved phase)


class EventKind(IntFlag):
    SEARCH = 1
    INCO_CHOICE = 2
    CONFLICT = 4
    LEARN_CLAUSE = 8
    LIT_IN_CONFLICT = 16
    DELETION = 32
    RESTART = 64
    UNROLL_LIT = 128


ALL_EVENTS = (EventKind.SEARCH | EventKind.INCO_CHOICE | EventKind.CONFLICT
              | EventKind.LEARN_CLAUSE | EventKind.LIT_IN_CONFLICT
              | EventKind.DELETION | EventKind.RESTART | EventKind.UNROLL_LIT)

NO_EVENTS = EventKind(0)


# --- events (engine -> driver) ---

@dataclass(frozen=True)
class SearchEvent:
    """Search begins: the simplified clause set and the atoms still in play."""

    kind: ClassVar[EventKind] = EventKind.SEARCH
    clauses: tuple[tuple[int, ...], ...]
    num_atoms: int
    active_atoms: tuple[int, ...]


@dataclass(frozen=True)
class IncoChoiceEvent:
    """Propagating the freshly made decision lit ran straight into a conflict."""

    kind: ClassVar[EventKind] = EventKind.INCO_CHOICE
    lit: int


@dataclass(frozen=True)
class ConflictEvent:
    """A conflict was detected; lit is the most recent decision (BOTTOM at level 0)."""

    kind: ClassVar[EventKind] = EventKind.CONFLICT
    lit: int


@dataclass(frozen=True)
class LearnClauseEvent:
    kind: ClassVar[EventKind] = EventKind.LEARN_CLAUSE
    lits: tuple[int, ...]


@dataclass(frozen=True)
class LitInConflictEvent:
    """lit took part in deriving the clause being learned."""

    kind: ClassVar[EventKind] = EventKind.LIT_IN_CONFLICT
    lit: int


@dataclass(frozen=True)
class DeletionEvent:
    kind: ClassVar[EventKind] = EventKind.DELETION
    lits: tuple[int, ...]


@dataclass(frozen=True)
class RestartEvent:
    kind: ClassVar[EventKind] = EventKind.RESTART


class UnrollLitEvent:
    """lit was removed from the trail (one event per removed entry).

    Hand-rolled rather than a dataclass: one of these is built for every
    popped trail entry under a subscribed driver, and the generated
    frozen-dataclass __init__ was a measurable slice of backjump time.
    """

    kind: ClassVar[EventKind] = EventKind.UNROLL_LIT
    __slots__ = ("lit",)

    def __init__(self, lit: int):
        self.lit = lit

    def __repr__(self):
        return "UnrollLitEvent(lit=%d)" % self.lit

    def __eq__(self, other):
        return type(other) is UnrollLitEvent and other.lit == self.lit

    def __hash__(self):
        return hash((EventKind.UNROLL_LIT, self.lit))


# --- requests (engine -> driver, answer required) ---

@dataclass(frozen=True)
class FreezeRequest:
    """Which atoms must survive simplification untouched?"""

    atoms: range


@dataclass(frozen=True)
class ChoiceRequest:
    """What next?  view is a read-only window on the current interpretation."""

    view: Any


# --- responses (driver -> engine) ---

@dataclass(frozen=True)
class Freeze:
    atoms: tuple[int, ...]


@dataclass(frozen=True)
class Choice:
    """A plan of (atom, sign) decisions; sign is 'p', 'n', or 'f'."""

    plan: tuple[tuple[int, str], ...]


@dataclass(frozen=True)
class Unroll:
    """Undo until lit is undefined; BOTTOM asks for a full restart."""

    lit: int


@dataclass(frozen=True)
class Fallback:
    """Hand decisions to the engine's own heuristic.

    n > 0 enables it for the next n decisions; n <= 0 enables it permanently.
    initial_activity replaces activity values, bump_factor amplifies future
    bumps, sign_priority fixes the branching sign of listed atoms.
    """

    n: int
    initial_activity: Mapping[int, int] = field(default_factory=dict)
    bump_factor: Mapping[int, int] = field(default_factory=dict)
    sign_priority: Mapping[int, str] = field(default_factory=dict)


@dataclass(frozen=True)
class AddClause:
    """Add a clause mid-search; an empty lits tuple is the falsum clause."""

    lits: tuple[int, ...]


RESPONSES_FOR_FREEZE = (Freeze,)
RESPONSES_FOR_CHOICE = (Choice, Unroll, Fallback, AddClause)


class ProtocolViolation(RuntimeError):
    """The driver broke the request/response contract; the solve is aborted."""


class Driver:
    """Base driver: subscribes to nothing and must implement answer()."""

    def subscription(self) -> EventKind:
        return NO_EVENTS

    def bind(self, engine) -> None:
        """Called once before solving; drivers may keep the engine reference."""

    def on_event(self, event) -> None:
        pass

    def answer(self, request):
        raise NotImplementedError
