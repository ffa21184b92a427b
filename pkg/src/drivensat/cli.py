"""Command-line front end.

``drivensat solve`` runs a DIMACS file with a chosen driver and prints
SAT-competition-style output (``s`` status line, ``v`` model line); exit
code 10 for satisfiable, 20 for unsatisfiable, 0 for unknown, 1 for any
file or usage problem.  ``drivensat bench`` compares drivers over the
generated partner-units families and emits one CSV row per run.  The
``pup`` subcommands generate, encode, solve and validate partner-units
instances directly.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from .drivers import FallbackNowDriver, PigeonholeDriver
from .engine import SATISFIABLE, UNSATISFIABLE, SolveResult, SolverConfig, solve
from .formula import Formula, parse_dimacs, render_dimacs
from .protocol import ProtocolViolation
from .pup import (FAMILIES, VARIANTS, PupSolution, encode, generate,
                  parse_instance, pup_driver, render_instance, validate)
from .wire import WireDriver

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_UNKNOWN = 0
EXIT_ERROR = 1


class CliError(Exception):
    pass


@dataclass
class RunReport:
    """Everything one solve produced, in printable form."""

    status: str
    model: dict | None
    decisions: int
    conflicts: int
    restarts: int
    learned: int
    deleted: int
    propagations: int
    wall_ms: float
    driver: str

    def stat_lines(self) -> list:
        return [
            "c driver %s" % self.driver,
            "c decisions %d" % self.decisions,
            "c conflicts %d" % self.conflicts,
            "c restarts %d" % self.restarts,
            "c learned %d" % self.learned,
            "c deleted %d" % self.deleted,
            "c propagations %d" % self.propagations,
            "c wall_ms %.1f" % self.wall_ms,
        ]


def _report(result: SolveResult, wall_ms: float, driver_name: str) -> RunReport:
    st = result.stats
    return RunReport(result.status,
                     result.model if result.status == SATISFIABLE else None,
                     st.decisions, st.conflicts, st.restarts, st.learned,
                     st.deleted, st.propagations, wall_ms, driver_name)


def build_driver(spec: str, formula: Formula | None = None, pup_enc=None,
                 wire_checksum: bool = False):
    """Turn a --driver argument into a driver instance.

    Returns (driver, closer); the closer shuts down external processes
    and is a no-op for in-process drivers.
    """
    if spec == "default":
        return FallbackNowDriver(), lambda: None
    if spec == "pigeonhole":
        if formula is None:
            raise CliError("the pigeonhole driver needs a CNF input")
        return PigeonholeDriver(formula), lambda: None
    if spec.startswith("extern:"):
        cmd = spec[len("extern:"):]
        if not cmd.strip():
            raise CliError("empty extern: driver command")
        drv = WireDriver(cmd, checksum=wire_checksum)
        return drv, drv.close
    if spec.startswith("pup:"):
        variant = spec[len("pup:"):]
        if variant not in VARIANTS:
            raise CliError("unknown pup driver %r (expected one of %s)"
                           % (variant, ", ".join(VARIANTS)))
        if pup_enc is None:
            raise CliError("--driver pup:%s needs --pup-instance" % variant)
        return pup_driver(pup_enc, variant), lambda: None
    raise CliError("unknown driver %r" % spec)


def run_one(formula: Formula, driver, name: str, seed: int,
            conflicts: int | None, timeout: float | None) -> RunReport:
    config = SolverConfig(rng_seed=seed, conflict_budget=conflicts)
    if timeout is not None:
        deadline = time.monotonic() + timeout
        config.stop_check = lambda: time.monotonic() >= deadline
    t0 = time.perf_counter()
    result = solve(formula, driver, config)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    return _report(result, wall_ms, name)


def _print_result(report: RunReport, num_atoms: int, show_stats: bool,
                  out=None) -> int:
    out = out or sys.stdout
    if show_stats:
        for line in report.stat_lines():
            print(line, file=out)
    print("s %s" % report.status, file=out)
    if report.status == SATISFIABLE:
        lits = [a if report.model.get(a, False) else -a
                for a in range(1, num_atoms + 1)]
        print("v %s 0" % " ".join(str(l) for l in lits), file=out)
    if report.status == SATISFIABLE:
        return EXIT_SAT
    if report.status == UNSATISFIABLE:
        return EXIT_UNSAT
    return EXIT_UNKNOWN


# ---- solve ----

def _same_clauses(a: Formula, b: Formula) -> bool:
    if a.num_atoms != b.num_atoms:
        return False
    left = sorted(tuple(sorted(c.lits)) for c in a.clauses)
    right = sorted(tuple(sorted(c.lits)) for c in b.clauses)
    return left == right


def cmd_solve(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            formula = parse_dimacs(fh.read())
    except OSError as exc:
        raise CliError("cannot read %s: %s" % (args.file, exc)) from exc

    pup_enc = None
    if args.pup_instance is not None:
        try:
            with open(args.pup_instance, "r", encoding="utf-8") as fh:
                inst = parse_instance(fh.read())
        except OSError as exc:
            raise CliError("cannot read %s: %s" % (args.pup_instance, exc)) from exc
        enc_formula, pup_enc = encode(inst)
        if not _same_clauses(formula, enc_formula):
            raise CliError("%s is not the encoding of %s"
                           % (args.file, args.pup_instance))

    driver, closer = build_driver(args.driver, formula=formula,
                                  pup_enc=pup_enc,
                                  wire_checksum=args.wire_checksum)
    try:
        report = run_one(formula, driver, args.driver, args.seed,
                         args.conflicts, args.timeout)
    finally:
        closer()
    return _print_result(report, formula.num_atoms, args.stats)


# ---- bench ----

def _parse_sizes(text: str) -> list:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise CliError("empty size list")
    return out


def _parse_ints(text: str) -> list:
    return [int(p) for p in text.split(",") if p.strip()]


def cmd_bench(args) -> int:
    sizes = _parse_sizes(args.sizes)
    seeds = _parse_ints(args.seeds) or [0]
    drivers = [d.strip() for d in args.drivers.split(",") if d.strip()]
    if not drivers:
        raise CliError("no drivers given")

    rows = []
    for size in sizes:
        for seed in seeds:
            name = "%s-%d-s%d" % (args.family, size, seed)
            try:
                inst = generate(args.family, size, seed)
                formula, enc = encode(inst)
            except Exception as exc:
                for spec in drivers:
                    rows.append((name, spec, seed, "ERROR", 0, 0, 0, 0.0))
                print("c %s: generation failed: %s" % (name, exc),
                      file=sys.stderr)
                continue
            for spec in drivers:
                try:
                    driver, closer = build_driver(spec, formula=formula,
                                                  pup_enc=enc)
                    try:
                        rep = run_one(formula, driver, spec, seed,
                                      args.conflicts, args.timeout)
                    finally:
                        closer()
                    rows.append((name, spec, seed, rep.status, rep.decisions,
                                 rep.conflicts, rep.restarts, rep.wall_ms))
                except Exception as exc:
                    rows.append((name, spec, seed, "ERROR", 0, 0, 0, 0.0))
                    print("c %s %s: %s" % (name, spec, exc), file=sys.stderr)

    lines = ["instance,driver,seed,status,decisions,conflicts,restarts,time_ms"]
    for name, spec, seed, status, dec, conf, rst, ms in rows:
        lines.append("%s,%s,%d,%s,%d,%d,%d,%.1f"
                     % (name, spec, seed, status, dec, conf, rst, ms))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    for spec in drivers:
        mine = [r for r in rows if r[1] == spec]
        solved = [r for r in mine
                  if r[3] in (SATISFIABLE, UNSATISFIABLE)]
        mean = (sum(r[7] for r in mine) / len(mine)) if mine else 0.0
        print("c %s: solved %d/%d, mean %.0f ms"
              % (spec, len(solved), len(mine), mean), file=sys.stderr)
    return 0


# ---- pup subcommands ----

def _read_instance(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_instance(fh.read())
    except OSError as exc:
        raise CliError("cannot read %s: %s" % (path, exc)) from exc


def _write_or_stdout(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_pup_generate(args) -> int:
    inst = generate(args.family, args.size, args.seed, num_units=args.units)
    _write_or_stdout(render_instance(inst), args.out)
    return 0


def cmd_pup_encode(args) -> int:
    inst = _read_instance(args.file)
    formula, _ = encode(inst)
    _write_or_stdout(render_dimacs(formula), args.out)
    return 0


def render_solution(sol: PupSolution) -> str:
    lines = []
    for z, u in sol.zone_unit.items():
        lines.append("zone %s %d" % (z, u))
    for s, u in sol.sensor_unit.items():
        lines.append("sensor %s %d" % (s, u))
    for a, b in sorted(sol.partners):
        lines.append("partner %d %d" % (a, b))
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> PupSolution:
    sol = PupSolution()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "zone" and len(tok) == 3:
                sol.zone_unit[tok[1]] = int(tok[2])
            elif tok[0] == "sensor" and len(tok) == 3:
                sol.sensor_unit[tok[1]] = int(tok[2])
            elif tok[0] == "partner" and len(tok) == 3:
                a, b = int(tok[1]), int(tok[2])
                sol.partners.add((a, b) if a < b else (b, a))
            else:
                raise ValueError
        except ValueError:
            raise CliError("bad solution line %d: %r" % (lineno, raw)) from None
    return sol


def cmd_pup_solve(args) -> int:
    inst = _read_instance(args.file)
    formula, enc = encode(inst)

    roots = [None]
    if args.sweep_roots:
        if not args.driver.startswith("pup:"):
            raise CliError("--sweep-roots needs a pup:<variant> driver")
        roots = [("z", z) for z in inst.zones] or [None]

    report = None
    for root in roots:
        if args.driver.startswith("pup:") and root is not None:
            driver = pup_driver(enc, args.driver[len("pup:"):], root=root)
            closer = lambda: None
        else:
            driver, closer = build_driver(args.driver, formula=formula,
                                          pup_enc=enc, wire_checksum=False)
        try:
            report = run_one(formula, driver, args.driver, args.seed,
                             args.conflicts, args.timeout)
        finally:
            closer()
        if report.status == SATISFIABLE or not args.sweep_roots:
            break

    if report.status == SATISFIABLE:
        truths = {a for a, v in report.model.items() if v}
        sol = enc.decode(truths)
        bad = validate(inst, sol)
        if bad:
            for b in bad:
                print("c INVALID %s" % b, file=sys.stderr)
            raise CliError("model decodes to an invalid placement")
        if args.solution_out:
            with open(args.solution_out, "w", encoding="utf-8") as fh:
                fh.write(render_solution(sol))
    if args.stats:
        for line in report.stat_lines():
            print(line)
    print("s %s" % report.status)
    if report.status == SATISFIABLE:
        return EXIT_SAT
    if report.status == UNSATISFIABLE:
        return EXIT_UNSAT
    return EXIT_UNKNOWN


def cmd_pup_validate(args) -> int:
    inst = _read_instance(args.file)
    try:
        with open(args.solution, "r", encoding="utf-8") as fh:
            sol = parse_solution(fh.read())
    except OSError as exc:
        raise CliError("cannot read %s: %s" % (args.solution, exc)) from exc
    bad = validate(inst, sol)
    if bad:
        for b in bad:
            print(b)
        return EXIT_ERROR
    print("valid")
    return 0


# ---- argument plumbing ----

def _add_solve_flags(p):
    p.add_argument("--seed", type=int, default=0, help="heuristic tie-break seed")
    p.add_argument("--conflicts", type=int, default=None,
                   help="stop with UNKNOWN after this many conflicts")
    p.add_argument("--timeout", type=float, default=None,
                   help="stop with UNKNOWN after this many seconds")
    p.add_argument("--stats", action="store_true", help="print c statistic lines")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drivensat")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a DIMACS CNF file")
    p.add_argument("file")
    p.add_argument("--driver", default="default",
                   help="default | pigeonhole | extern:<cmd> | pup:<variant>")
    p.add_argument("--pup-instance", default=None,
                   help="instance file backing a pup:<variant> driver")
    p.add_argument("--wire-checksum", action="store_true",
                   help="attach assignment checksums to extern driver requests")
    _add_solve_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="compare drivers over generated families")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--sizes", required=True, help="e.g. 2..4 or 2,4,8")
    p.add_argument("--seeds", default="0", help="comma-separated seeds")
    p.add_argument("--drivers", default="default,pup:pred",
                   help="comma-separated driver specs")
    p.add_argument("--conflicts", type=int, default=50000)
    p.add_argument("--timeout", type=float, default=None)
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_bench)

    pup = sub.add_parser("pup", help="partner-units instance tools")
    psub = pup.add_subparsers(dest="pup_command", required=True)

    p = psub.add_parser("generate", help="emit a generated instance")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--units", type=int, default=None,
                   help="override the searched minimum unit count")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_pup_generate)

    p = psub.add_parser("encode", help="emit the DIMACS encoding of an instance")
    p.add_argument("file")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_pup_encode)

    p = psub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    p.add_argument("--driver", default="pup:quickpup",
                   help="default | pup:<variant> | pigeonhole | extern:<cmd>")
    p.add_argument("--sweep-roots", action="store_true",
                   help="retry with every zone as traversal root until satisfiable")
    p.add_argument("--solution-out", default=None,
                   help="write the decoded placement here when satisfiable")
    _add_solve_flags(p)
    p.set_defaults(func=cmd_pup_solve)

    p = psub.add_parser("validate", help="check a solution file against an instance")
    p.add_argument("file")
    p.add_argument("solution")
    p.set_defaults(func=cmd_pup_validate)

    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR
    except ProtocolViolation as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
