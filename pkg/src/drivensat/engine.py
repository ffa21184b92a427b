"""Conflict-driven clause-learning search with driver touchpoints.

The engine owns propagation, conflict analysis, backjumping, restarts and
clause deletion; every branching decision is delegated to a driver through
the message types in protocol.py.  Stepping methods (prepare / propagate /
decide / analyze / backjump) are exposed so the pieces can be exercised in
isolation; solve() strings them together.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .activity import ActivityState
from .formula import (Formula, KIND_DRIVER, KIND_INPUT, KIND_LEARNED,
                      check_model, normalize_literals)
from .protocol import (AddClause, BOTTOM, CHOICE_SIGNS, Choice,
                       ChoiceRequest, ConflictEvent, DeletionEvent, Driver,
                       EventKind, Fallback, Freeze, FreezeRequest,
                       IncoChoiceEvent, LearnClauseEvent, LitInConflictEvent,
                       ProtocolViolation, RestartEvent, SearchEvent, Unroll,
                       UnrollLitEvent)
from .simplify import SimplifiedFormula, simplify

SATISFIABLE = "SATISFIABLE"
UNSATISFIABLE = "UNSATISFIABLE"
UNKNOWN = "UNKNOWN"

_UNIT_REASON = object()  # reason marker for top-level facts

_CLA_DECAY = 1.0 / 0.999
_CLA_RESCALE = 1e20


def luby(i: int) -> int:
    """i-th element (1-based) of the Luby restart sequence 1,1,2,1,1,2,4,..."""
    x = i - 1
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) // 2
        seq -= 1
        x %= size
    return 1 << seq


class _WClause:
    """Internal clause: positions 0 and 1 are the watched literals.

    spos remembers where the last replacement-watch scan stopped so long
    clauses are walked circularly instead of from the front every time.
    """

    __slots__ = ("lits", "kind", "activity", "lbd", "deleted", "seq", "spos")

    def __init__(self, lits: list[int], kind: str, seq: int):
        self.lits = lits
        self.kind = kind
        self.activity = 0.0
        self.lbd = 0
        self.deleted = False
        self.seq = seq
        self.spos = 2


@dataclass
class SolverConfig:
    restart_base: int = 64
    deletion_interval: int = 2000
    rng_seed: int = 0
    event_mask: EventKind | None = None   # None: use the driver's subscription
    conflict_budget: int | None = None
    minimize_learned: bool = False        # keep the raw resolution result by default
    bump_conflict_lits: bool = False      # also bump every conflict-involved literal
    activity_from_formula: bool = False   # seed activities with occurrence counts
    record_decisions: bool = False
    stop_check: Callable[[], bool] | None = None

    def validate(self) -> None:
        if self.restart_base < 1:
            raise ValueError("restart_base must be >= 1")
        if self.deletion_interval < 1:
            raise ValueError("deletion_interval must be >= 1")
        if self.conflict_budget is not None and self.conflict_budget < 0:
            raise ValueError("conflict_budget must be >= 0")


@dataclass
class Stats:
    decisions: int = 0
    conflicts: int = 0
    restarts: int = 0
    learned: int = 0
    deleted: int = 0
    propagations: int = 0


@dataclass
class SolveResult:
    status: str
    model: dict[int, bool] | None
    stats: Stats
    decision_seq: list[int] | None = None


class InterpretationView:
    """Read-only window on the engine's current assignment.

    Valid only for the duration of the request that carries it.
    """

    __slots__ = ("_e",)

    def __init__(self, engine: "Engine"):
        self._e = engine

    @property
    def num_atoms(self) -> int:
        return self._e.num_atoms

    @property
    def decision_level(self) -> int:
        return len(self._e.trail_lim)

    def value(self, atom: int) -> bool | None:
        v = self._e.values[atom]
        return None if v == 0 else v > 0

    def level(self, atom: int) -> int | None:
        if self._e.values[atom] == 0:
            return None
        return self._e.levels[atom]

    def is_eliminated(self, atom: int) -> bool:
        return atom in self._e.eliminated

    def trail_length(self) -> int:
        return len(self._e.trail)

    def trail_suffix(self, start: int) -> list[tuple[int, int]]:
        """Trail entries (lit, level) from index start onward."""
        e = self._e
        return [(lit, e.levels[abs(lit)]) for lit in e.trail[start:]]


class Engine:
    def __init__(self, formula: Formula, driver: Driver,
                 config: SolverConfig | None = None):
        self.formula = formula
        self.driver = driver
        self.config = config or SolverConfig()
        self.config.validate()
        self.num_atoms = formula.num_atoms
        self.stats = Stats()
        self.mask = (driver.subscription() if self.config.event_mask is None
                     else self.config.event_mask)
        # flag tests live on hot paths, so the mask is unpacked once
        m = int(self.mask)
        self._ev_search = bool(m & EventKind.SEARCH)
        self._ev_inco = bool(m & EventKind.INCO_CHOICE)
        self._ev_conflict = bool(m & EventKind.CONFLICT)
        self._ev_learn = bool(m & EventKind.LEARN_CLAUSE)
        self._ev_litconf = bool(m & EventKind.LIT_IN_CONFLICT)
        self._ev_delete = bool(m & EventKind.DELETION)
        self._ev_restart = bool(m & EventKind.RESTART)
        self._ev_unroll = bool(m & EventKind.UNROLL_LIT)

        n = self.num_atoms
        self.values = [0] * (n + 1)           # atom -> 0 undef, 1 true, -1 false
        self.vlit = [0] * (2 * n + 1)         # lit+n -> literal truth, same coding
        self.levels = [0] * (n + 1)
        self.reasons: list = [None] * (n + 1)
        self.saved = [False] * (n + 1)        # saved phases start all-negative
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.watches: list[list[tuple[int, _WClause]]] = []
        self.bwatches: list[list[tuple[int, _WClause]]] = []
        self._watches_ready = False
        self.clauses: list[_WClause] = []
        self.learned: list[_WClause] = []
        self._pending: list = []
        self._act_init = ([], self.config.rng_seed, None)
        self.eliminated: set[int] = set()
        self.simplified: SimplifiedFormula | None = None
        self.activity: ActivityState | None = None
        self._cla_inc = 1.0
        self._plan: list[tuple[int, str]] = []
        self._plan_pos = 0
        self._fallback = 0                    # 0 off, -1 permanent, k>0 window
        self._seq = 0
        self._prepared = False
        self._inconsistent = False
        self.decision_seq: list[int] | None = ([] if self.config.record_decisions
                                               else None)
        self._needed = 0
        self._restart_conflicts = 0
        self._last_lbd = 0
        # test-only hooks, called when set
        self.on_learn_hook: Callable | None = None
        self.on_backjump_hook: Callable[[int], None] | None = None
        driver.bind(self)

    # ---- event plumbing ----

    def _emit(self, event) -> None:
        self.driver.on_event(event)

    # ---- preparation ----

    def prepare(self) -> bool:
        """Freeze request + simplification + search event.

        Returns False when simplification already refuted the formula.
        """
        resp = self._ask(FreezeRequest(range(1, self.num_atoms + 1)))
        frozen = self._validate_freeze(resp)
        simp = simplify(self.formula, frozen)
        self.simplified = simp
        self._prepared = True
        if simp.inconsistent:
            self._inconsistent = True
            return False
        self.eliminated = simp.eliminated
        self._pending = simp.clauses
        for atom, val in simp.fixed.items():
            self._enqueue(atom if val else -atom, _UNIT_REASON)
        self.stats.propagations += len(simp.fixed)
        # Simplification already propagated to fixpoint and the fixed atoms do
        # not occur in any remaining clause, so the queue starts drained.
        self.qhead = len(self.trail)
        initial = None
        if self.config.activity_from_formula:
            initial = {}
            for lits in simp.clauses:
                for lit in lits:
                    initial[abs(lit)] = initial.get(abs(lit), 0) + 1
        active = simp.active_atoms()
        self._act_init = (active, self.config.rng_seed, initial)
        self._needed = len(active) + len(simp.fixed)
        if self._ev_search:
            self._emit(SearchEvent(tuple(tuple(c) for c in simp.clauses),
                                   self.num_atoms, tuple(active)))
        return True

    def _validate_freeze(self, resp) -> set[int]:
        atoms = set()
        for a in resp.atoms:
            if not isinstance(a, int) or a < 1 or a > self.num_atoms:
                raise ProtocolViolation(
                    f"Freeze names unknown atom {a!r} (atoms are 1..{self.num_atoms})")
            atoms.add(a)
        return atoms

    # ---- clause wiring ----

    def _add_internal(self, lits: list[int], kind: str) -> _WClause:
        self._seq += 1
        c = _WClause(lits, kind, self._seq)
        if kind == KIND_LEARNED:
            self.learned.append(c)
        else:
            self.clauses.append(c)
        if self._watches_ready and len(lits) >= 2:
            self._watch(c)
        return c

    def _ensure_watches(self) -> None:
        # Clause objects and watch lists are built on first demand so that
        # refutations at the first choice stay cheap.
        if self._watches_ready:
            return
        self.watches = [[] for _ in range(2 * self.num_atoms + 1)]
        self.bwatches = [[] for _ in range(2 * self.num_atoms + 1)]
        self._watches_ready = True
        if self._pending:
            mat = []
            for lits in self._pending:
                self._seq += 1
                mat.append(_WClause(list(lits), KIND_INPUT, self._seq))
            self.clauses = mat + self.clauses
            self._pending = []
        for c in self.clauses:
            if len(c.lits) >= 2:
                self._watch(c)
        for c in self.learned:
            if len(c.lits) >= 2:
                self._watch(c)

    def _act(self) -> ActivityState:
        # Heap construction is deferred for the same reason; decisions come
        # out the same because the state depends only on the active set, the
        # seed, the snapshotted initial scores, and the bump history since,
        # all of which are identical wherever the first touch lands.
        if self.activity is None:
            active, seed, initial = self._act_init
            self.activity = ActivityState(active, seed=seed, initial=initial)
        return self.activity

    def _watch(self, c: _WClause) -> None:
        # Watch entries are (blocker, clause): the blocker is some other
        # literal of the clause, checked before the clause is touched at all.
        # Binary clauses live in their own lists and never move watches.
        n = self.num_atoms
        l0, l1 = c.lits[0], c.lits[1]
        dest = self.bwatches if len(c.lits) == 2 else self.watches
        dest[l0 + n].append((l1, c))
        dest[l1 + n].append((l0, c))

    # ---- trail ----

    def _enqueue(self, lit: int, reason) -> None:
        atom = abs(lit)
        n = self.num_atoms
        self.values[atom] = 1 if lit > 0 else -1
        self.vlit[lit + n] = 1
        self.vlit[n - lit] = -1
        self.levels[atom] = len(self.trail_lim)
        self.reasons[atom] = reason
        self.trail.append(lit)

    def decide(self, lit: int) -> None:
        """Open a new decision level and assert lit."""
        self.trail_lim.append(len(self.trail))
        self._enqueue(lit, None)
        self.stats.decisions += 1
        if self.decision_seq is not None:
            self.decision_seq.append(lit)

    def backjump(self, level: int) -> None:
        """Undo all trail entries above the given decision level."""
        if level >= len(self.trail_lim):
            return
        limit = self.trail_lim[level]
        removed = len(self.trail) - limit
        unroll = self._ev_unroll
        n = self.num_atoms
        vlit = self.vlit
        trail = self.trail
        saved = self.saved
        values = self.values
        reasons = self.reasons
        act = self.activity
        elim = self.eliminated
        on_event = self.driver.on_event
        while len(trail) > limit:
            lit = trail.pop()
            atom = lit if lit > 0 else -lit
            saved[atom] = lit > 0
            values[atom] = 0
            vlit[lit + n] = 0
            vlit[n - lit] = 0
            reasons[atom] = None
            if act is not None and atom not in elim:
                act.on_unassign(atom)
            if unroll:
                on_event(UnrollLitEvent(lit))
        del self.trail_lim[level:]
        self.qhead = len(self.trail)
        if self.on_backjump_hook is not None:
            self.on_backjump_hook(removed)

    # ---- propagation ----

    def propagate(self) -> _WClause | None:
        """Two-watched-literal unit propagation; returns a conflict clause or None."""
        if self.qhead >= len(self.trail):
            return None
        self._ensure_watches()
        values = self.values
        vlit = self.vlit
        levels = self.levels
        reasons = self.reasons
        watches = self.watches
        bwatches = self.bwatches
        trail = self.trail
        n = self.num_atoms
        level = len(self.trail_lim)
        props = 0
        confl = None
        while self.qhead < len(trail):
            lit = trail[self.qhead]
            self.qhead += 1
            fals = -lit
            fidx = fals + n

            # binary clauses: fixed watch pairs, direct implication
            for other, c in bwatches[fidx]:
                v = vlit[other + n]
                if v > 0:
                    continue
                if v == 0:
                    atom = other if other > 0 else -other
                    values[atom] = 1 if other > 0 else -1
                    vlit[other + n] = 1
                    vlit[n - other] = -1
                    levels[atom] = level
                    reasons[atom] = c
                    trail.append(other)
                    props += 1
                else:
                    confl = c
                    break
            if confl is not None:
                break

            ws = watches[fidx]
            i = j = 0
            total = len(ws)
            while i < total:
                entry = ws[i]
                i += 1
                if vlit[entry[0] + n] > 0:
                    ws[j] = entry
                    j += 1
                    continue
                c = entry[1]
                if c.deleted:
                    continue
                lits = c.lits
                if lits[0] == fals:
                    lits[0] = lits[1]
                    lits[1] = fals
                w0 = lits[0]
                v0 = vlit[w0 + n]
                if v0 > 0:
                    ws[j] = (w0, c)
                    j += 1
                    continue
                lits_len = len(lits)
                start = c.spos
                if start >= lits_len:
                    start = 2
                moved = False
                k = start
                while True:
                    lk = lits[k]
                    if vlit[lk + n] >= 0:
                        lits[1] = lk
                        lits[k] = fals
                        watches[lk + n].append((w0, c))
                        c.spos = k
                        moved = True
                        break
                    k += 1
                    if k == lits_len:
                        k = 2
                    if k == start:
                        break
                if moved:
                    continue
                ws[j] = (w0, c)
                j += 1
                if v0 < 0:
                    while i < total:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    confl = c
                    break
                atom = w0 if w0 > 0 else -w0
                values[atom] = 1 if w0 > 0 else -1
                vlit[w0 + n] = 1
                vlit[n - w0] = -1
                levels[atom] = level
                reasons[atom] = c
                trail.append(w0)
                props += 1
            del ws[j:]
            if confl is not None:
                break
        self.stats.propagations += props
        return confl

    # ---- conflict analysis ----

    def analyze(self, confl: _WClause) -> tuple[list[int], int]:
        """First-UIP resolution from a conflict clause.

        Returns (learned_lits, backjump_level); learned_lits[0] is the
        asserting literal.  Level-0 literals are retained: the result is the
        exact resolution outcome unless minimization is switched on.
        """
        level = len(self.trail_lim)
        values = self.values
        levels = self.levels
        reasons = self.reasons
        seen = [False] * (self.num_atoms + 1)
        tail: list[int] = []
        counter = 0
        emit_lits = self._ev_litconf
        bump_lits = self.config.bump_conflict_lits

        c: _WClause | None = confl
        skip_lit = 0
        idx = len(self.trail) - 1
        uip = 0
        while True:
            c.activity += self._cla_inc
            if c.activity > _CLA_RESCALE:
                self._rescale_clauses()
            for lit in c.lits:
                if lit == skip_lit:
                    continue
                atom = abs(lit)
                if seen[atom]:
                    continue
                seen[atom] = True
                if emit_lits:
                    self._emit(LitInConflictEvent(lit))
                if bump_lits and atom not in self.eliminated:
                    self._act().bump(atom)
                if levels[atom] == level:
                    counter += 1
                else:
                    tail.append(lit)
            while True:
                top = self.trail[idx]
                idx -= 1
                if seen[abs(top)]:
                    break
            counter -= 1
            if counter == 0:
                uip = top
                break
            c = reasons[abs(top)]
            skip_lit = top
            # a seen current-level literal below the UIP always has a clause reason
            assert isinstance(c, _WClause)

        learned = [-uip] + tail
        if self.config.minimize_learned:
            learned = self._minimize(learned, seen)
        bj = 0
        for lit in learned[1:]:
            lv = levels[abs(lit)]
            if lv > bj:
                bj = lv
        if len(learned) >= 2:
            # put a backjump-level literal in the second watch slot
            k = max(range(1, len(learned)), key=lambda i: levels[abs(learned[i])])
            learned[1], learned[k] = learned[k], learned[1]
        lbd = len({levels[abs(l)] for l in learned})
        self._cla_inc *= _CLA_DECAY

        self._act().on_clause_learned(learned)
        if self._ev_learn:
            self._emit(LearnClauseEvent(tuple(learned)))
        if self.on_learn_hook is not None:
            snapshot = [(l, levels[abs(l)],
                         tuple(reasons[abs(l)].lits) if isinstance(reasons[abs(l)], _WClause) else None)
                        for l in self.trail]
            self.on_learn_hook(snapshot, tuple(confl.lits), tuple(learned), bj)
        self._last_lbd = lbd
        return learned, bj

    def _minimize(self, learned: list[int], seen: list[bool]) -> list[int]:
        # local minimization: drop tail literals whose reasons are covered
        out = [learned[0]]
        for lit in learned[1:]:
            r = self.reasons[abs(lit)]
            if isinstance(r, _WClause) and all(
                    seen[abs(x)] or self.levels[abs(x)] == 0
                    for x in r.lits if x != -lit):
                continue
            out.append(lit)
        return out

    def _rescale_clauses(self) -> None:
        for c in self.learned:
            c.activity *= 1.0 / _CLA_RESCALE
        self._cla_inc *= 1.0 / _CLA_RESCALE

    # ---- learned-clause deletion ----

    def _reduce_db(self) -> None:
        locked = {id(r) for r in self.reasons if isinstance(r, _WClause)}
        candidates = [c for c in self.learned
                      if not c.deleted and c.lbd > 2 and len(c.lits) > 1
                      and id(c) not in locked]
        if not candidates:
            return
        candidates.sort(key=lambda c: (c.activity, c.seq))
        emit = self._ev_delete
        for c in candidates[:len(candidates) // 2]:
            c.deleted = True
            self.stats.deleted += 1
            if emit:
                self._emit(DeletionEvent(tuple(c.lits)))
        self.learned = [c for c in self.learned if not c.deleted]

    # ---- driver requests ----

    def _ask(self, request):
        resp = self.driver.answer(request)
        if isinstance(request, FreezeRequest):
            if not isinstance(resp, Freeze):
                raise ProtocolViolation(
                    f"request for frozen atoms must be answered with Freeze, "
                    f"got {type(resp).__name__}")
        else:
            if not isinstance(resp, (Choice, Unroll, Fallback, AddClause)):
                raise ProtocolViolation(
                    f"choice request must be answered with Choice, Unroll, "
                    f"Fallback or AddClause, got {type(resp).__name__}")
        return resp

    def _check_atom(self, atom, context: str) -> None:
        if not isinstance(atom, int) or atom < 1 or atom > self.num_atoms:
            raise ProtocolViolation(
                f"{context} references unknown atom {atom!r} "
                f"(atoms are 1..{self.num_atoms})")
        if atom in self.eliminated:
            raise ProtocolViolation(
                f"{context} references atom {atom} eliminated during simplification")

    def _apply_choice(self, resp: Choice) -> None:
        for entry in resp.plan:
            try:
                atom, sign = entry
            except (TypeError, ValueError):
                raise ProtocolViolation(
                    f"Choice plan entries must be (atom, sign) pairs, got {entry!r}"
                ) from None
            self._check_atom(atom, "Choice plan")
            if sign not in CHOICE_SIGNS:
                raise ProtocolViolation(
                    f"Choice plan sign must be one of {CHOICE_SIGNS}, got {sign!r}")
        self._plan = list(resp.plan)
        self._plan_pos = 0

    def _apply_unroll(self, resp: Unroll) -> str | None:
        self._plan = []
        self._plan_pos = 0
        if resp.lit == BOTTOM:
            self.backjump(0)
            self.stats.restarts += 1
            self._restart_conflicts = 0
            if self._ev_restart:
                self._emit(RestartEvent())
            return None
        if not isinstance(resp.lit, int):
            raise ProtocolViolation(f"Unroll target {resp.lit!r} is not a literal")
        atom = abs(resp.lit)
        self._check_atom(atom, "Unroll")
        if self.values[atom] == 0:
            raise ProtocolViolation(f"Unroll target {resp.lit} is not assigned")
        lv = self.levels[atom]
        if lv == 0:
            raise ProtocolViolation(
                f"Unroll target {resp.lit} is forced at level 0 and cannot be undone")
        self.backjump(lv - 1)
        return None

    def _apply_fallback(self, resp: Fallback) -> None:
        st = self._act()
        for atom, val in resp.initial_activity.items():
            self._check_atom(atom, "Fallback initial-activity map")
            if not isinstance(val, (int, float)) or val < 0:
                raise ProtocolViolation(
                    f"Fallback initial activity for atom {atom} must be >= 0, got {val!r}")
        for atom, val in resp.bump_factor.items():
            self._check_atom(atom, "Fallback bump-factor map")
            if not isinstance(val, (int, float)) or val <= 0:
                raise ProtocolViolation(
                    f"Fallback bump factor for atom {atom} must be positive, got {val!r}")
        for atom, sign in resp.sign_priority.items():
            self._check_atom(atom, "Fallback sign-priority map")
            if sign not in ("p", "n"):
                raise ProtocolViolation(
                    f"Fallback sign priority must be 'p' or 'n', got {sign!r}")
        for atom, val in resp.initial_activity.items():
            if atom not in self.simplified.fixed:
                st.set_activity(atom, float(val))
        for atom, val in resp.bump_factor.items():
            st.set_factor(atom, float(val))
        for atom, sign in resp.sign_priority.items():
            st.set_sign(atom, sign)
        self._fallback = -1 if resp.n <= 0 else resp.n

    def _apply_add_clause(self, resp: AddClause) -> bool:
        """Integrate a driver clause; returns False when it refutes the formula."""
        for lit in resp.lits:
            if not isinstance(lit, int) or lit == 0:
                raise ProtocolViolation(f"AddClause literal {lit!r} is not a literal")
            self._check_atom(abs(lit), "AddClause")
        lits = normalize_literals(resp.lits)
        if lits is None:
            return True  # tautology: no trail change, choice is re-requested
        if not lits:
            self._inconsistent = True
            return False
        values = self.values
        levels = self.levels

        def val(lit: int) -> int:
            v = values[abs(lit)]
            return 0 if v == 0 else (v if lit > 0 else -v)

        if all(val(l) < 0 for l in lits):
            top = max(levels[abs(l)] for l in lits)
            if top == 0:
                self._inconsistent = True
                return False
            self.backjump(top - 1)
        if len(lits) == 1:
            lit = lits[0]
            if val(lit) < 0:  # still false: forced at level 0
                self._inconsistent = True
                return False
            self.backjump(0)
            c = self._add_internal([lit], KIND_DRIVER)
            if val(lit) == 0:
                self._enqueue(lit, c)
                self.stats.propagations += 1
            return True
        ordered = sorted(lits, key=lambda l: (val(l) < 0, -levels[abs(l)] if val(l) < 0 else 0))
        c = self._add_internal(list(ordered), KIND_DRIVER)
        w0 = c.lits[0]
        if val(w0) == 0 and all(val(l) < 0 for l in c.lits[1:]):
            self._enqueue(w0, c)
            self.stats.propagations += 1
        return True

    # ---- decision selection ----

    def _plan_next(self) -> int | None:
        while self._plan_pos < len(self._plan):
            atom, sign = self._plan[self._plan_pos]
            self._plan_pos += 1
            if self.values[atom] != 0:
                continue  # already assigned in either polarity: skip
            if sign == "p":
                return atom
            if sign == "n":
                return -atom
            pref = self._act().preferred_sign(atom)
            if pref is not None:
                return atom if pref == "p" else -atom
            return atom if self.saved[atom] else -atom
        self._plan = []
        self._plan_pos = 0
        return None

    def _fallback_next(self) -> int:
        st = self._act()
        atom = st.pick(lambda a: self.values[a] == 0)
        assert atom is not None
        if self._fallback > 0:
            self._fallback -= 1
        pref = st.preferred_sign(atom)
        sign_p = pref == "p" if pref is not None else False
        return atom if sign_p else -atom

    # ---- main loop ----

    def solve(self) -> SolveResult:
        cfg = self.config
        if not self._prepared:
            if not self.prepare():
                return self._result(UNSATISFIABLE)
        elif self._inconsistent:
            return self._result(UNSATISFIABLE)

        budget = cfg.conflict_budget
        restart_idx = 1
        self._restart_conflicts = 0
        restart_limit = cfg.restart_base * luby(restart_idx)
        conflicts_to_reduce = cfg.deletion_interval
        just_decided = 0
        tick = 0

        while True:
            tick += 1
            if (tick & 1023) == 0 and cfg.stop_check is not None:
                if cfg.stop_check():
                    return self._result(UNKNOWN)
            if budget is not None and self.stats.conflicts >= budget:
                return self._result(UNKNOWN)
            confl = self.propagate()
            if confl is not None:
                self.stats.conflicts += 1
                self._restart_conflicts += 1
                conflicts_to_reduce -= 1
                level = len(self.trail_lim)
                dec = self.trail[self.trail_lim[-1]] if level > 0 else BOTTOM
                if self._ev_conflict:
                    self._emit(ConflictEvent(dec))
                if just_decided and self._ev_inco:
                    self._emit(IncoChoiceEvent(just_decided))
                just_decided = 0
                self._plan = []
                self._plan_pos = 0
                if level == 0:
                    self._inconsistent = True
                    return self._result(UNSATISFIABLE)
                learned, bj = self.analyze(confl)
                self.backjump(bj)
                self.stats.learned += 1
                c = self._add_internal(list(learned), KIND_LEARNED)
                c.lbd = self._last_lbd
                self._enqueue(learned[0], c)
                self.stats.propagations += 1
                if conflicts_to_reduce <= 0:
                    conflicts_to_reduce = cfg.deletion_interval
                    self._reduce_db()
                continue
            just_decided = 0
            if len(self.trail) == self._needed:
                return self._result(SATISFIABLE)
            if self._restart_conflicts >= restart_limit:
                restart_idx += 1
                restart_limit = cfg.restart_base * luby(restart_idx)
                self._restart_conflicts = 0
                self.stats.restarts += 1
                self.backjump(0)
                self._plan = []
                self._plan_pos = 0
                if self._ev_restart:
                    self._emit(RestartEvent())
                continue
            lit = None
            if self._fallback != 0:
                lit = self._fallback_next()
            else:
                lit = self._plan_next()
                if lit is None:
                    resp = self._ask(ChoiceRequest(InterpretationView(self)))
                    if isinstance(resp, Choice):
                        self._apply_choice(resp)
                    elif isinstance(resp, Unroll):
                        self._apply_unroll(resp)
                    elif isinstance(resp, Fallback):
                        self._apply_fallback(resp)
                    else:
                        if not self._apply_add_clause(resp):
                            return self._result(UNSATISFIABLE)
                    continue
            self.decide(lit)
            just_decided = lit

    # ---- results ----

    def _result(self, status: str) -> SolveResult:
        model = None
        if status == SATISFIABLE:
            partial = {abs(l): l > 0 for l in self.trail}
            model = self.simplified.extend_model(partial)
            bad = check_model(self.formula, model)
            if bad is not None:
                raise AssertionError(f"internal error: model violates clause {bad.lits}")
        return SolveResult(status, model, self.stats, self.decision_seq)


def solve(formula: Formula, driver: Driver,
          config: SolverConfig | None = None) -> SolveResult:
    """Convenience wrapper: run a full solve with the given driver."""
    return Engine(formula, driver, config).solve()
