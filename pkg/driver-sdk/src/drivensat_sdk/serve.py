"""The child-side event loop: speaks the solver's line protocol on stdio.

Messages are single lines of space-separated tokens; literals are signed
integers as in DIMACS and 0 stands for falsum.  The solver opens with
HELLO, interleaves EVT lines with REQ lines, and finishes with BYE.
Every response this loop writes is flushed immediately, since the solver
blocks on it.
"""

from __future__ import annotations

import sys

from .base import EVENT_NAMES
from .responses import Response
from .view import InterpretationView

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = 0xFFFFFFFFFFFFFFFF


def checksum(lits):
    """FNV-1a 64 over the sorted literals, space-joined; matches the solver."""
    text = " ".join(str(l) for l in sorted(lits))
    h = _FNV_OFFSET
    for b in text.encode("ascii"):
        h = ((h ^ b) * _FNV_PRIME) & _MASK
    return h


class WireFormatError(Exception):
    """The solver side sent something the protocol does not allow."""


class _Loop:

    def __init__(self, driver, stdin, stdout):
        self.driver = driver
        self.stdin = stdin
        self.stdout = stdout
        self.view = InterpretationView()
        driver.view = self.view
        self.checks = 0  # CHK lines received and verified

    def send(self, line):
        self.stdout.write(line + "\n")
        self.stdout.flush()

    def recv(self):
        raw = self.stdin.readline()
        if raw == "":
            return None
        return raw.rstrip("\n")

    def need(self, what):
        line = self.recv()
        if line is None:
            raise WireFormatError("solver stream ended while expecting %s" % what)
        return line

    def ints(self, tokens, line):
        try:
            return [int(t) for t in tokens]
        except ValueError:
            raise WireFormatError("non-integer token in %r" % line) from None

    def terminated(self, tokens, line):
        vals = self.ints(tokens, line)
        if not vals or vals[-1] != 0 or any(v == 0 for v in vals[:-1]):
            raise WireFormatError("list not 0-terminated cleanly in %r" % line)
        return tuple(vals[:-1])

    def run(self):
        line = self.need("HELLO")
        parts = line.split()
        if len(parts) != 2 or parts[0] != "HELLO":
            raise WireFormatError("expected HELLO, got %r" % line)
        if parts[1] != "1":
            raise WireFormatError("unsupported protocol version %r" % parts[1])
        self.send("READY")
        names = []
        for name in self.driver.subscriptions:
            if name not in EVENT_NAMES:
                raise ValueError("unknown event name %r in subscriptions" % (name,))
            if name not in names:
                names.append(name)
        if "UNROLLLIT" not in names:
            # the assignment mirror cannot stay in step without it
            names.append("UNROLLLIT")
        self.send("SUB " + " ".join(names))
        while True:
            line = self.recv()
            if line is None or line == "BYE":
                return
            parts = line.split()
            if parts and parts[0] == "EVT" and len(parts) >= 2:
                self.event(parts, line)
            elif parts and parts[0] == "REQ":
                self.request(parts, line)
            else:
                raise WireFormatError("unexpected line %r" % line)

    # ---- solver to driver ----

    def event(self, parts, line):
        name = parts[1]
        d = self.driver
        if name == "SEARCH":
            if len(parts) != 4:
                raise WireFormatError("malformed SEARCH event %r" % line)
            natoms, nclauses = self.ints(parts[2:], line)
            if natoms < 0 or nclauses < 0:
                raise WireFormatError("negative count in %r" % line)
            self.view.num_atoms = natoms
            clauses = []
            for _ in range(nclauses):
                cl = self.need("a CL line")
                toks = cl.split()
                if not toks or toks[0] != "CL":
                    raise WireFormatError("expected a CL line, got %r" % cl)
                clauses.append(self.terminated(toks[1:], cl))
            d.on_search(natoms, tuple(clauses))
        elif name == "INCOCHOICE":
            d.on_inco_choice(self.one_lit(parts, line))
        elif name == "CONFLICT":
            if len(parts) != 3:
                raise WireFormatError("malformed event %r" % line)
            (lit,) = self.ints(parts[2:], line)
            d.on_conflict(lit)
        elif name == "LEARN":
            d.on_learn_clause(self.terminated(parts[2:], line))
        elif name == "LITCONFLICT":
            d.on_lit_in_conflict(self.one_lit(parts, line))
        elif name == "DELETE":
            d.on_deletion(self.terminated(parts[2:], line))
        elif name == "RESTART":
            if len(parts) != 2:
                raise WireFormatError("malformed event %r" % line)
            d.on_restart()
        elif name == "UNROLLLIT":
            lit = self.one_lit(parts, line)
            self.view._unassign_top(lit)
            d.on_unroll_lit(lit)
        else:
            raise WireFormatError("unknown event %r" % line)

    def one_lit(self, parts, line):
        if len(parts) != 3:
            raise WireFormatError("malformed event %r" % line)
        (lit,) = self.ints(parts[2:], line)
        if lit == 0:
            raise WireFormatError("0 is not a literal in %r" % line)
        return lit

    # ---- driver to solver ----

    def request(self, parts, line):
        d = self.driver
        if len(parts) == 3 and parts[1] == "FROZEN":
            (natoms,) = self.ints(parts[2:], line)
            if natoms < 0:
                raise WireFormatError("negative atom count in %r" % line)
            self.view.num_atoms = natoms
            atoms = []
            for atom in d.frozen_atoms():
                if not isinstance(atom, int) or isinstance(atom, bool):
                    raise ValueError("frozen_atoms must yield ints, got %r" % (atom,))
                atoms.append(atom)
            self.send("RSP FREEZE %d%s" % (len(atoms),
                                           "".join(" %d" % a for a in atoms)))
        elif len(parts) == 2 and parts[1] == "CHOICE":
            while True:
                sub = self.need("ASG, CHK or END")
                toks = sub.split()
                if len(toks) == 3 and toks[0] == "ASG":
                    lit, level = self.ints(toks[1:], sub)
                    if lit == 0 or level < 0:
                        raise WireFormatError("bad assignment line %r" % sub)
                    self.view._assign(lit, level)
                elif len(toks) == 2 and toks[0] == "CHK":
                    (want,) = self.ints(toks[1:], sub)
                    got = checksum(l for l, _ in self.view._trail)
                    if got != want:
                        raise WireFormatError(
                            "assignment checksum mismatch: solver says %d, "
                            "mirror has %d over %d literals"
                            % (want, got, len(self.view)))
                    self.checks += 1
                elif toks == ["END"]:
                    break
                else:
                    raise WireFormatError(
                        "unexpected line %r inside a choice request" % sub)
            rsp = d.get_choice(self.view)
            if not isinstance(rsp, Response):
                raise TypeError(
                    "get_choice must return a response object, got %r" % (rsp,))
            self.send(rsp.line())
        else:
            raise WireFormatError("unexpected request %r" % line)


def serve(driver, stdin=None, stdout=None, stderr=None):
    """Run the driver against the solver on stdin/stdout until BYE.

    Returns the number of checksum lines verified (0 unless the solver
    had checksums enabled).  A line that breaks the protocol gets a
    diagnostic on stderr and exits the process with status 2; driver
    bugs propagate as ordinary exceptions.
    """
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    loop = _Loop(driver, stdin, stdout)
    try:
        loop.run()
    except WireFormatError as exc:
        print("driver-sdk: %s" % exc, file=stderr)
        raise SystemExit(2) from None
    return loop.checks
