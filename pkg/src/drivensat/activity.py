"""Activity-ordered branching state.

One implementation serves both sides of the default-heuristic parity
contract: the engine's internal fallback path and the bundled activity
driver each own an ActivityState and feed it the same stream of clause
learns and unassignments, so equal seeds give equal decision sequences.
"""

from __future__ import annotations

import heapq
import random
from typing import Callable, Iterable

DEFAULT_DECAY = 1.0 / 0.95
RESCALE_LIMIT = 1e100
RESCALE_FACTOR = 1e-100


class ActivityState:
    """Per-atom activities with exponential bumps and a lazy max-heap order.

    Ties between equal activities are broken by a per-seed random priority
    assigned up front; selection is deterministic for a fixed seed.
    """

    __slots__ = ("atoms", "activity", "inc", "decay", "factor", "sign_pref",
                 "_prio", "_heap", "_cap", "_fresh")

    def __init__(self, atoms: Iterable[int], seed: int = 0,
                 decay: float = DEFAULT_DECAY,
                 initial: dict[int, float] | None = None):
        self.atoms = tuple(atoms)
        top = max(self.atoms, default=0)
        self.activity = [0.0] * (top + 1)
        if initial:
            for atom, val in initial.items():
                self.activity[atom] = float(val)
        self.inc = 1.0
        self.decay = decay
        self.factor: dict[int, float] = {}
        self.sign_pref: dict[int, str] = {}
        rng = random.Random(seed)
        order = list(self.atoms)
        rng.shuffle(order)
        self._prio = {atom: i for i, atom in enumerate(order)}
        self._heap = [(-self.activity[a], self._prio[a], a) for a in self.atoms]
        heapq.heapify(self._heap)
        self._cap = max(1024, 4 * len(self.atoms))
        # atoms with an entry that reflects their current activity; at most
        # one such entry exists per atom, so unassign storms stay cheap
        self._fresh = set(self.atoms)

    # -- updates --

    def bump(self, atom: int) -> None:
        act = self.activity[atom] + self.inc * self.factor.get(atom, 1.0)
        self.activity[atom] = act
        self._push(atom)
        if act > RESCALE_LIMIT:
            self.rescale()

    def on_clause_learned(self, lits: Iterable[int]) -> None:
        """Bump every atom of a learned clause, then grow the increment."""
        for lit in lits:
            self.bump(abs(lit))
        self.inc *= self.decay

    def on_unassign(self, atom: int) -> None:
        if atom not in self._fresh and atom in self._prio:
            self._push(atom)

    def set_activity(self, atom: int, value: float) -> None:
        self.activity[atom] = float(value)
        self._push(atom)
        if value > RESCALE_LIMIT:
            self.rescale()

    def set_factor(self, atom: int, value: float) -> None:
        self.factor[atom] = float(value)

    def set_sign(self, atom: int, sign: str) -> None:
        self.sign_pref[atom] = sign

    def preferred_sign(self, atom: int) -> str | None:
        return self.sign_pref.get(atom)

    def rescale(self) -> None:
        self.activity = [a * RESCALE_FACTOR for a in self.activity]
        self.inc *= RESCALE_FACTOR
        self._rebuild()

    # -- selection --

    def pick(self, is_undefined: Callable[[int], bool]) -> int | None:
        """Pop the highest-activity undefined atom, or None if none is left."""
        heap = self._heap
        activity = self.activity
        while heap:
            neg_act, _, atom = heapq.heappop(heap)
            if -neg_act != activity[atom]:
                continue  # stale entry superseded by a later push
            self._fresh.discard(atom)
            if is_undefined(atom):
                return atom
        return None

    # -- internals --

    def _push(self, atom: int) -> None:
        heapq.heappush(self._heap, (-self.activity[atom], self._prio[atom], atom))
        self._fresh.add(atom)
        if len(self._heap) > self._cap:
            self._rebuild()

    def _rebuild(self) -> None:
        self._heap = [(-self.activity[a], self._prio[a], a) for a in self.atoms]
        heapq.heapify(self._heap)
        self._fresh = set(self.atoms)
