"""Propositional formulas over DIMACS-style integer literals.

Atoms are dense positive integers ``1..num_atoms``.  A literal is a nonzero
signed integer whose sign is its polarity; ``-lit`` is its complement.  The
integer 0 never denotes an atom and is reserved as an out-of-band marker by
the driver protocol.
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field
from typing import Iterable

KIND_INPUT = "input"
KIND_LEARNED = "learned"
KIND_DRIVER = "driver-added"


class DimacsError(ValueError):
    """Malformed DIMACS input; carries the 1-based source line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DimacsWarning(UserWarning):
    """Recoverable oddity in DIMACS input (count mismatch etc.)."""


def normalize_literals(lits: Iterable[int]) -> tuple[int, ...] | None:
    """Drop duplicate literals, keeping first-occurrence order.

    Returns None when the clause is a tautology (contains l and -l).
    """
    seen: set[int] = set()
    out: list[int] = []
    for lit in lits:
        if -lit in seen:
            return None
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


@dataclass(frozen=True)
class Clause:
    """An immutable disjunction of literals, tagged with its origin."""

    lits: tuple[int, ...]
    kind: str = KIND_INPUT

    def __len__(self) -> int:
        return len(self.lits)

    def __iter__(self):
        return iter(self.lits)

    def __contains__(self, lit: int) -> bool:
        return lit in self.lits


@dataclass
class Formula:
    """A CNF formula: a clause list over atoms 1..num_atoms."""

    num_atoms: int
    clauses: list[Clause] = field(default_factory=list)

    def __post_init__(self):
        if self.num_atoms < 0:
            raise ValueError("num_atoms must be >= 0")
        for c in self.clauses:
            for lit in c.lits:
                if lit == 0 or abs(lit) > self.num_atoms:
                    raise ValueError(f"literal {lit} outside atom range 1..{self.num_atoms}")

    def atoms(self) -> range:
        return range(1, self.num_atoms + 1)

    def lit_tuples(self) -> list[tuple[int, ...]]:
        """Clause literal tuples in clause order, cached after the first call.

        Bulk consumers (simplification, structure recognition) read this
        instead of re-walking the clause objects.  Treat it as read-only.
        """
        cached = self.__dict__.get("_lit_tuples")
        if cached is None:
            cached = [c.lits for c in self.clauses]
            self.__dict__["_lit_tuples"] = cached
        return cached


def formula_from_ints(num_atoms: int, int_clauses: Iterable[Iterable[int]],
                      kind: str = KIND_INPUT) -> Formula:
    """Build a Formula from raw integer clauses, normalizing each one.

    Tautological clauses are dropped; duplicate clauses are kept.
    """
    clauses = []
    for raw in int_clauses:
        lits = normalize_literals(raw)
        if lits is not None:
            clauses.append(Clause(lits, kind))
    return Formula(num_atoms, clauses)


def parse_dimacs(source) -> Formula:
    """Parse DIMACS CNF from a string, bytes, or readable text stream.

    Raises DimacsError (with line number) on malformed input; emits
    DimacsWarning when the header counts disagree with the body.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="replace")
    if isinstance(source, str):
        source = io.StringIO(source)

    num_atoms = None
    declared_clauses = None
    int_clauses: list[list[int]] = []
    current: list[int] = []
    header_line = 0

    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("%"):
            break  # SATLIB-style trailer
        if stripped.startswith("p"):
            if num_atoms is not None:
                raise DimacsError("duplicate header", lineno)
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"bad header {stripped!r}", lineno)
            try:
                num_atoms = int(parts[2])
                declared_clauses = int(parts[3])
            except ValueError:
                raise DimacsError(f"bad header {stripped!r}", lineno) from None
            if num_atoms < 0 or declared_clauses < 0:
                raise DimacsError("negative counts in header", lineno)
            header_line = lineno
            continue
        if num_atoms is None:
            raise DimacsError(f"clause data before header: {stripped!r}", lineno)
        for tok in stripped.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"expected integer, got {tok!r}", lineno) from None
            if lit == 0:
                int_clauses.append(current)
                current = []
            else:
                if abs(lit) > num_atoms:
                    raise DimacsError(
                        f"literal {lit} exceeds declared atom count {num_atoms}", lineno)
                current.append(lit)

    if num_atoms is None:
        raise DimacsError("missing 'p cnf' header", header_line or 1)
    if current:
        warnings.warn("final clause not terminated by 0", DimacsWarning, stacklevel=2)
        int_clauses.append(current)
    if declared_clauses is not None and declared_clauses != len(int_clauses):
        warnings.warn(
            f"header declares {declared_clauses} clauses, found {len(int_clauses)}",
            DimacsWarning, stacklevel=2)

    return formula_from_ints(num_atoms, int_clauses)


def render_dimacs(f: Formula) -> str:
    """Serialize a Formula to canonical DIMACS text."""
    lines = [f"p cnf {f.num_atoms} {len(f.clauses)}"]
    for c in f.clauses:
        lines.append(" ".join(str(l) for l in c.lits) + " 0")
    return "\n".join(lines) + "\n"


def check_model(f: Formula, model: dict[int, bool]) -> Clause | None:
    """Return the first clause violated by a total model, or None if satisfied.

    Raises ValueError when the model is not total over f's atoms.
    """
    for atom in f.atoms():
        if atom not in model:
            raise ValueError(f"model is not total: atom {atom} unassigned")
    for c in f.clauses:
        for lit in c.lits:
            if model[abs(lit)] == (lit > 0):
                break
        else:
            return c
    return None
