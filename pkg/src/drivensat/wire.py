"""Out-of-process driver transport: run a driver as a child process.

The bridge spawns the driver command and speaks a line-oriented text
protocol over its standard streams.  Literals travel as signed DIMACS
integers, 0 stands for falsum, lists are length-prefixed or 0-terminated,
and no message spans lines.

Solver to driver::

    HELLO 1
    EVT SEARCH <natoms> <nclauses>     (then <nclauses> lines "CL <lits...> 0")
    EVT INCOCHOICE <lit>
    EVT CONFLICT <lit|0>
    EVT LEARN <lits...> 0
    EVT LITCONFLICT <lit>
    EVT DELETE <lits...> 0
    EVT RESTART
    EVT UNROLLLIT <lit>
    REQ FROZEN <natoms>
    REQ CHOICE                          (then "ASG <lit> <level>" deltas,
                                         an optional "CHK <sum>", then "END")
    BYE

Driver to solver::

    READY
    SUB <evtname...>                    (once, right after READY)
    RSP FREEZE <k> <atom...>
    RSP CHOICE <k> (<atom> <p|n|f>)...
    RSP UNROLL <lit|0>
    RSP FALLBACK <n> <k> (<atom> <val>)... <k> (<atom> <val>)... <k> (<atom> <p|n>)...
    RSP ADDCLAUSE <lits...> 0

Assignment state crosses the wire as deltas at each choice request plus one
UNROLLLIT line per removed entry, so the child can maintain the
interpretation incrementally.  The bridge keeps its own record of what was
transmitted; in checksum mode every choice request carries a CHK line the
child can verify its mirror against.
"""

from __future__ import annotations

import os
import queue
import shlex
import subprocess
import threading

from .protocol import (AddClause, Choice, Driver, EventKind, Fallback, Freeze,
                       FreezeRequest, ProtocolViolation, Unroll)

DEFAULT_TIMEOUT = 60.0
TIMEOUT_ENV = "DRIVENSAT_WIRE_TIMEOUT"

EVENT_NAMES = (
    (EventKind.SEARCH, "SEARCH"),
    (EventKind.INCO_CHOICE, "INCOCHOICE"),
    (EventKind.CONFLICT, "CONFLICT"),
    (EventKind.LEARN_CLAUSE, "LEARN"),
    (EventKind.LIT_IN_CONFLICT, "LITCONFLICT"),
    (EventKind.DELETION, "DELETE"),
    (EventKind.RESTART, "RESTART"),
    (EventKind.UNROLL_LIT, "UNROLLLIT"),
)
KIND_BY_NAME = {name: kind for kind, name in EVENT_NAMES}

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64 = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _U64
    return h


def assignment_checksum(lits) -> int:
    """Checksum of an assignment: FNV-1a 64 over the sorted literals, space-joined."""
    text = " ".join(str(l) for l in sorted(lits))
    return fnv1a64(text.encode("ascii"))


class WireDriver(Driver):
    """Driver implementation backed by a child process.

    The child's SUB line decides which events cross the wire.  The bridge
    itself additionally tracks unassignments so its delta bookkeeping stays
    exact; UNROLLLIT lines are only transmitted when the child asked for
    them.
    """

    def __init__(self, command, *, timeout: float | None = None,
                 checksum: bool = False, stderr=None):
        if isinstance(command, str):
            argv = shlex.split(command)
        else:
            argv = [str(a) for a in command]
        if not argv:
            raise ValueError("empty driver command")
        if timeout is None:
            env = os.environ.get(TIMEOUT_ENV)
            timeout = float(env) if env else DEFAULT_TIMEOUT
        self.command = argv
        self.timeout = timeout
        self.checksum = checksum
        self._sent: list[int] = []
        self._closed = False
        self._proc = None
        try:
            self._proc = subprocess.Popen(
                argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                stderr=stderr, text=True)
        except OSError as exc:
            raise ProtocolViolation(
                f"cannot start driver process {argv!r}: {exc}") from None
        self._lines: queue.Queue = queue.Queue()
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()

        self._send("HELLO 1")
        line = self._recv()
        if line != "READY":
            self._fail(f"expected READY, driver sent {line!r}")
        sub = self._recv()
        parts = sub.split()
        if not parts or parts[0] != "SUB":
            self._fail(f"expected SUB line, driver sent {sub!r}")
        mask = EventKind(0)
        for name in parts[1:]:
            kind = KIND_BY_NAME.get(name)
            if kind is None:
                self._fail(f"unknown event name {name!r} in SUB line {sub!r}")
            mask |= kind
        self._child_mask = mask

    # ---- plumbing ----

    def _pump(self) -> None:
        out = self._proc.stdout
        try:
            for line in out:
                self._lines.put(line.rstrip("\n"))
        except ValueError:
            pass  # stream closed under the reader
        self._lines.put(None)

    def _send(self, line: str) -> None:
        try:
            self._proc.stdin.write(line + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, ValueError, OSError):
            self._fail("driver process stopped reading its input")

    def _send_many(self, lines) -> None:
        try:
            self._proc.stdin.write("\n".join(lines) + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, ValueError, OSError):
            self._fail("driver process stopped reading its input")

    def _recv(self) -> str:
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            self._fail(f"driver gave no response within {self.timeout:g}s")
        if line is None:
            code = self._proc.poll()
            self._fail(f"driver process exited (code {code}) mid-protocol")
        return line

    def _fail(self, message: str):
        self.close(kill=True)
        raise ProtocolViolation(f"wire driver {self.command[0]!r}: {message}")

    def _int(self, token: str, line: str) -> int:
        try:
            return int(token)
        except ValueError:
            self._fail(f"expected integer, got {token!r} in line {line!r}")

    # ---- driver interface ----

    def subscription(self) -> EventKind:
        return self._child_mask | EventKind.UNROLL_LIT

    def on_event(self, event) -> None:
        k = event.kind
        if k == EventKind.UNROLL_LIT:
            if self._sent and self._sent[-1] == event.lit:
                self._sent.pop()
            if self._child_mask & EventKind.UNROLL_LIT:
                self._send(f"EVT UNROLLLIT {event.lit}")
        elif k == EventKind.SEARCH:
            out = [f"EVT SEARCH {event.num_atoms} {len(event.clauses)}"]
            out.extend("CL " + " ".join(map(str, cl)) + " 0"
                       for cl in event.clauses)
            self._send_many(out)
        elif k == EventKind.CONFLICT:
            self._send(f"EVT CONFLICT {event.lit}")
        elif k == EventKind.INCO_CHOICE:
            self._send(f"EVT INCOCHOICE {event.lit}")
        elif k == EventKind.LEARN_CLAUSE:
            self._send("EVT LEARN " + " ".join(map(str, event.lits)) + " 0")
        elif k == EventKind.LIT_IN_CONFLICT:
            self._send(f"EVT LITCONFLICT {event.lit}")
        elif k == EventKind.DELETION:
            self._send("EVT DELETE " + " ".join(map(str, event.lits)) + " 0")
        elif k == EventKind.RESTART:
            self._send("EVT RESTART")

    def answer(self, request):
        if isinstance(request, FreezeRequest):
            self._send(f"REQ FROZEN {len(request.atoms)}")
            return self._parse_freeze(self._recv())
        view = request.view
        delta = view.trail_suffix(len(self._sent))
        out = ["REQ CHOICE"]
        out.extend(f"ASG {lit} {lv}" for lit, lv in delta)
        self._sent.extend(lit for lit, _ in delta)
        if self.checksum:
            out.append(f"CHK {assignment_checksum(self._sent)}")
        out.append("END")
        self._send_many(out)
        return self._parse_choice_response(self._recv())

    # ---- response decoding ----

    def _parse_freeze(self, line: str):
        parts = line.split()
        if len(parts) < 3 or parts[0] != "RSP" or parts[1] != "FREEZE":
            self._fail(f"expected RSP FREEZE, got {line!r}")
        k = self._int(parts[2], line)
        if k < 0 or len(parts) != 3 + k:
            self._fail(f"FREEZE count disagrees with payload in {line!r}")
        return Freeze(tuple(self._int(t, line) for t in parts[3:]))

    def _parse_choice_response(self, line: str):
        parts = line.split()
        if len(parts) < 2 or parts[0] != "RSP":
            self._fail(f"expected an RSP line, got {line!r}")
        tag = parts[1]
        if tag == "CHOICE":
            if len(parts) < 3:
                self._fail(f"truncated CHOICE response {line!r}")
            k = self._int(parts[2], line)
            if k < 0 or len(parts) != 3 + 2 * k:
                self._fail(f"CHOICE count disagrees with payload in {line!r}")
            plan = tuple((self._int(parts[3 + 2 * i], line), parts[4 + 2 * i])
                         for i in range(k))
            return Choice(plan)
        if tag == "UNROLL":
            if len(parts) != 3:
                self._fail(f"malformed UNROLL response {line!r}")
            return Unroll(self._int(parts[2], line))
        if tag == "FALLBACK":
            return self._parse_fallback(parts, line)
        if tag == "ADDCLAUSE":
            ints = [self._int(t, line) for t in parts[2:]]
            if not ints or ints[-1] != 0 or any(v == 0 for v in ints[:-1]):
                self._fail(f"ADDCLAUSE not 0-terminated cleanly: {line!r}")
            return AddClause(tuple(ints[:-1]))
        self._fail(f"unknown response tag {tag!r} in {line!r}")

    def _parse_fallback(self, parts: list, line: str):
        toks = parts[2:]
        pos = 0

        def take():
            nonlocal pos
            if pos >= len(toks):
                self._fail(f"truncated FALLBACK response {line!r}")
            tok = toks[pos]
            pos += 1
            return tok

        n = self._int(take(), line)
        initial = {}
        for _ in range(self._int(take(), line)):
            atom = self._int(take(), line)
            try:
                initial[atom] = float(take())
            except ValueError:
                self._fail(f"bad activity value in {line!r}")
        factors = {}
        for _ in range(self._int(take(), line)):
            atom = self._int(take(), line)
            try:
                factors[atom] = float(take())
            except ValueError:
                self._fail(f"bad bump factor in {line!r}")
        signs = {}
        for _ in range(self._int(take(), line)):
            atom = self._int(take(), line)
            signs[atom] = take()
        if pos != len(toks):
            self._fail(f"trailing tokens in FALLBACK response {line!r}")
        return Fallback(n, initial, factors, signs)

    # ---- lifecycle ----

    def close(self, kill: bool = False) -> None:
        if self._closed or self._proc is None:
            return
        self._closed = True
        proc = self._proc
        try:
            if proc.stdin and not proc.stdin.closed:
                if not kill:
                    proc.stdin.write("BYE\n")
                    proc.stdin.flush()
                proc.stdin.close()
        except (BrokenPipeError, ValueError, OSError):
            pass
        try:
            proc.wait(timeout=2)
        except subprocess.TimeoutExpired:
            proc.kill()
            proc.wait()
        if proc.stdout:
            proc.stdout.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False

    def __del__(self):
        try:
            self.close(kill=True)
        except Exception:
            pass


def run_child(cmd, args=(), *, timeout: float | None = None,
              checksum: bool = False, stderr=None) -> WireDriver:
    """Spawn cmd with args as a wire driver and complete the handshake."""
    if isinstance(cmd, str):
        argv = [cmd, *[str(a) for a in args]]
    else:
        argv = [*cmd, *[str(a) for a in args]]
    return WireDriver(argv, timeout=timeout, checksum=checksum, stderr=stderr)
