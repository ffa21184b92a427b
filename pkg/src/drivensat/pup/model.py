"""Partner-units instances and solutions.

An instance is a bipartite graph between zones and sensors plus three
numbers: how many interconnected units are available, how many zones
(and, separately, sensors) a single unit may host, and how many other
units each unit may be connected to.  A solution assigns every zone and
every sensor to a unit and lists the unit pairs that are connected.

Text format, one declaration per line, '#' starts a comment:

    zone <id>
    sensor <id>
    edge <zone-id> <sensor-id>
    param units <n> ucap <k> iucap <k>
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class PupInstance:
    zones: tuple
    sensors: tuple
    edges: tuple          # (zone_id, sensor_id) pairs, input order
    num_units: int
    ucap: int
    iucap: int

    def __post_init__(self):
        if self.num_units < 1:
            raise ValueError("need at least one unit")
        if self.ucap < 1:
            raise ValueError("unit capacity must be at least 1")
        if self.iucap < 0:
            raise ValueError("interconnection capacity must be nonnegative")
        zs = set(self.zones)
        ss = set(self.sensors)
        if len(zs) != len(self.zones):
            raise ValueError("duplicate zone id")
        if len(ss) != len(self.sensors):
            raise ValueError("duplicate sensor id")
        seen = set()
        for z, s in self.edges:
            if z not in zs:
                raise ValueError("edge mentions unknown zone %r" % (z,))
            if s not in ss:
                raise ValueError("edge mentions unknown sensor %r" % (s,))
            if (z, s) in seen:
                raise ValueError("duplicate edge %r-%r" % (z, s))
            seen.add((z, s))

    def capacity_lower_bound(self) -> int:
        """Units needed just to host everything, ignoring connections."""
        biggest = max(len(self.zones), len(self.sensors))
        if biggest == 0:
            return 0
        return math.ceil(biggest / self.ucap)

    def zone_sensors(self) -> dict:
        """Zone id -> list of adjacent sensor ids, edge input order."""
        out = {z: [] for z in self.zones}
        for z, s in self.edges:
            out[z].append(s)
        return out

    def sensor_zones(self) -> dict:
        out = {s: [] for s in self.sensors}
        for z, s in self.edges:
            out[s].append(z)
        return out


@dataclass
class PupSolution:
    zone_unit: dict = field(default_factory=dict)    # zone id -> unit (1-based)
    sensor_unit: dict = field(default_factory=dict)
    partners: set = field(default_factory=set)       # frozenset-free: (lo, hi) tuples


def validate(inst: PupInstance, sol: PupSolution) -> list:
    """Check a solution against an instance from first principles.

    Returns a list of human-readable violation strings; an empty list
    means the solution is valid.  Deliberately ignorant of any CNF
    encoding so it can serve as an independent check on decoded models.
    """
    bad = []
    units = range(1, inst.num_units + 1)

    for z in inst.zones:
        u = sol.zone_unit.get(z)
        if u is None:
            bad.append("zone %r has no unit" % (z,))
        elif u not in units:
            bad.append("zone %r assigned to unknown unit %d" % (z, u))
    for s in inst.sensors:
        u = sol.sensor_unit.get(s)
        if u is None:
            bad.append("sensor %r has no unit" % (s,))
        elif u not in units:
            bad.append("sensor %r assigned to unknown unit %d" % (s, u))

    for a, b in sol.partners:
        if a >= b:
            bad.append("partner pair (%d, %d) not ordered" % (a, b))
        if a not in units or b not in units:
            bad.append("partner pair (%d, %d) mentions unknown unit" % (a, b))

    zcount = {}
    for z, u in sol.zone_unit.items():
        zcount[u] = zcount.get(u, 0) + 1
    for u, c in sorted(zcount.items()):
        if c > inst.ucap:
            bad.append("unit %d hosts %d zones, capacity %d" % (u, c, inst.ucap))
    scount = {}
    for s, u in sol.sensor_unit.items():
        scount[u] = scount.get(u, 0) + 1
    for u, c in sorted(scount.items()):
        if c > inst.ucap:
            bad.append("unit %d hosts %d sensors, capacity %d" % (u, c, inst.ucap))

    for z, s in inst.edges:
        uz = sol.zone_unit.get(z)
        us = sol.sensor_unit.get(s)
        if uz is None or us is None:
            continue  # reported above
        if uz == us:
            continue
        pair = (uz, us) if uz < us else (us, uz)
        if pair not in sol.partners:
            bad.append("edge %r-%r spans units %d and %d but they are not partners"
                       % (z, s, uz, us))

    degree = {}
    for a, b in sol.partners:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    for u, d in sorted(degree.items()):
        if d > inst.iucap:
            bad.append("unit %d has %d partners, capacity %d" % (u, d, inst.iucap))

    return bad


def parse_instance(text: str) -> PupInstance:
    zones = []
    sensors = []
    edges = []
    params = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "zone" and len(tok) == 2:
                zones.append(tok[1])
            elif tok[0] == "sensor" and len(tok) == 2:
                sensors.append(tok[1])
            elif tok[0] == "edge" and len(tok) == 3:
                edges.append((tok[1], tok[2]))
            elif (tok[0] == "param" and len(tok) == 7 and tok[1] == "units"
                  and tok[3] == "ucap" and tok[5] == "iucap"):
                params = (int(tok[2]), int(tok[4]), int(tok[6]))
            else:
                raise ValueError
        except ValueError:
            raise ValueError("bad instance line %d: %r" % (lineno, raw)) from None
    if params is None:
        raise ValueError("instance has no 'param units ... ucap ... iucap ...' line")
    return PupInstance(tuple(zones), tuple(sensors), tuple(edges),
                       num_units=params[0], ucap=params[1], iucap=params[2])


def render_instance(inst: PupInstance) -> str:
    lines = []
    for z in inst.zones:
        lines.append("zone %s" % z)
    for s in inst.sensors:
        lines.append("sensor %s" % s)
    for z, s in inst.edges:
        lines.append("edge %s %s" % (z, s))
    lines.append("param units %d ucap %d iucap %d"
                 % (inst.num_units, inst.ucap, inst.iucap))
    return "\n".join(lines) + "\n"
