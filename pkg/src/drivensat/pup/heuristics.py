"""Traversal-guided branching drivers for partner-units instances.

The drivers walk the zone/sensor graph in a fixed breadth-first order and
assign each vertex to a unit with one positive decision at a time.  They
differ only in which unit they try first for a vertex:

* ``quickpup``       a fresh unit first, then used units newest-first
* ``quickpup-star``  used units oldest-first, then a fresh unit
* ``pred``           units already hosting a vertex within graph distance
                     two, then a fresh unit, then the remaining used units

When every candidate unit for the current vertex is ruled out, the driver
asks the engine to unroll its own most recent placement decision that is
still in effect and remembers that unit as rejected for that vertex.
Placements derived by propagation are never unroll targets: undoing one
would leave its cause in place and the search would tread water.  When
there is no decision left to unroll, the driver hands the search to the
engine's own heuristic for good.

Vertices are ``("z", id)`` or ``("s", id)`` tuples; the vertex universe is
ordered zones-first, both halves in input order.
"""

from __future__ import annotations

from collections import deque

from ..protocol import Choice, EventKind, Fallback, SearchEvent, Unroll
from .encoding import PupEncoding
from .model import PupInstance
from ..drivers import TrailMirrorDriver

VARIANTS = ("quickpup", "quickpup-star", "pred")


def _neighbors(inst: PupInstance) -> dict:
    adj = {("z", z): [] for z in inst.zones}
    for s in inst.sensors:
        adj[("s", s)] = []
    for z, s in inst.edges:
        adj[("z", z)].append(("s", s))
        adj[("s", s)].append(("z", z))
    return adj


def quickpup_order(inst: PupInstance, root=None) -> list:
    """Breadth-first vertex order from root, neighbors in input order.

    Vertices unreachable from the root follow afterwards, each remaining
    component traversed the same way from its first vertex in input order.
    The default root is the first zone (first sensor if there are no zones).
    """
    universe = [("z", z) for z in inst.zones] + [("s", s) for s in inst.sensors]
    if not universe:
        return []
    if root is None:
        root = universe[0]
    adj = _neighbors(inst)
    if root not in adj:
        raise ValueError("unknown root vertex %r" % (root,))

    order = []
    seen = set()

    def bfs(start):
        seen.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    bfs(root)
    for v in universe:
        if v not in seen:
            bfs(v)
    return order


class PupDriver(TrailMirrorDriver):
    """Depth-first unit assignment along a fixed vertex order."""

    def __init__(self, enc: PupEncoding, variant: str = "quickpup", root=None):
        if variant not in VARIANTS:
            raise ValueError("unknown variant %r (expected one of %s)"
                             % (variant, ", ".join(VARIANTS)))
        super().__init__()
        self.enc = enc
        self.inst = enc.inst
        self.variant = variant
        self.root = root
        self.order: list = []
        self.pos = {}                  # vertex -> index in order
        self.tried: dict = {}          # index -> set of rejected units
        self.fallback_sent = False

        # atom -> (vertex, unit) for every placement atom
        self.owner = {}
        for (z, u), atom in enc.zu.items():
            self.owner[atom] = (("z", z), u)
        for (s, u), atom in enc.su.items():
            self.owner[atom] = (("s", s), u)

        self.vunit = {}                # vertex -> unit it currently runs on
        self.host_count = {}           # unit -> number of hosted vertices
        self.created: list = []        # currently used units, first-use order
        self.chosen: list = []         # our placement decisions still in effect
        self._proposed = 0             # atom offered in the last Choice

        self._adj = _neighbors(self.inst)
        self._build_order()

    def _build_order(self):
        self.order = quickpup_order(self.inst, self.root)
        self.pos = {v: i for i, v in enumerate(self.order)}

    def _atom(self, vertex, unit) -> int:
        kind, name = vertex
        if kind == "z":
            return self.enc.zu[(name, unit)]
        return self.enc.su[(name, unit)]

    # mirror bookkeeping
    def on_assigned(self, lit: int, level: int) -> None:
        if lit < 0:
            return
        got = self.owner.get(lit)
        if got is None:
            return
        vertex, unit = got
        self.vunit[vertex] = unit
        n = self.host_count.get(unit, 0) + 1
        self.host_count[unit] = n
        if n == 1:
            self.created.append(unit)
        if lit == self._proposed and level > 0:
            self.chosen.append((self.pos[vertex], vertex, unit, lit))
        self._proposed = 0

    def on_unassigned(self, lit: int) -> None:
        if lit < 0:
            return
        got = self.owner.get(lit)
        if got is None:
            return
        vertex, unit = got
        self.vunit.pop(vertex, None)
        if self.chosen and self.chosen[-1][3] == lit:
            self.chosen.pop()
        n = self.host_count[unit] - 1
        self.host_count[unit] = n
        if n == 0:
            # trail discipline empties units newest-first
            if self.created and self.created[-1] == unit:
                self.created.pop()
            else:
                self.created.remove(unit)

    # driver surface
    def events(self) -> EventKind:
        return EventKind.SEARCH

    def handle_event(self, event) -> None:
        if isinstance(event, SearchEvent):
            self._build_order()

    def frozen_atoms(self, request) -> tuple:
        return tuple(self.enc.placement_atoms())

    def _fresh_unit(self):
        for u in range(1, self.inst.num_units + 1):
            if self.host_count.get(u, 0) == 0:
                return u
        return None

    def _near_units(self, vertex) -> list:
        """Units hosting vertices within two edges of vertex, in the order
        a two-level breadth-first sweep encounters those vertices."""
        out = []
        seen_v = {vertex}
        seen_u = set()
        ring = []
        for w in self._adj[vertex]:
            if w not in seen_v:
                seen_v.add(w)
                ring.append(w)
        for w in ring:
            u = self.vunit.get(w)
            if u is not None and u not in seen_u:
                seen_u.add(u)
                out.append(u)
        for w in ring:
            for x in self._adj[w]:
                if x in seen_v:
                    continue
                seen_v.add(x)
                u = self.vunit.get(x)
                if u is not None and u not in seen_u:
                    seen_u.add(u)
                    out.append(u)
        return out

    def _candidates(self, vertex) -> list:
        fresh = self._fresh_unit()
        if self.variant == "quickpup":
            seq = ([] if fresh is None else [fresh]) + list(reversed(self.created))
        elif self.variant == "quickpup-star":
            seq = list(self.created) + ([] if fresh is None else [fresh])
        else:
            near = self._near_units(vertex)
            seq = list(near)
            if fresh is not None:
                seq.append(fresh)
            seq.extend(u for u in self.created if u not in near)
        out = []
        seen = set()
        for u in seq:
            if u not in seen:
                seen.add(u)
                out.append(u)
        return out

    def get_choice(self, view):
        if self.fallback_sent:
            return Fallback(0)

        target = None
        for i, vertex in enumerate(self.order):
            if vertex not in self.vunit:
                target = i
                break
        if target is None:
            # every vertex is placed; let the engine finish the counters
            self.fallback_sent = True
            return Fallback(0)

        vertex = self.order[target]
        rejected = self.tried.get(target, ())
        for u in self._candidates(vertex):
            if u in rejected:
                continue
            atom = self._atom(vertex, u)
            if self.mirror_value(atom) is None:
                self._proposed = atom
                return Choice(((atom, "p"),))

        # dead end: retract our deepest placement decision still standing
        if self.chosen:
            j, _, unit, lit = self.chosen[-1]
            self.tried.setdefault(j, set()).add(unit)
            for k in list(self.tried):
                if k > j:
                    del self.tried[k]
            return Unroll(lit)

        self.fallback_sent = True
        return Fallback(0)


def pup_driver(enc: PupEncoding, variant: str = "quickpup", root=None) -> PupDriver:
    return PupDriver(enc, variant, root=root)
