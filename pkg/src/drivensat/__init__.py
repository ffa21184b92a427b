"""CDCL SAT solving with the branching heuristic behind a driver protocol."""

from .formula import (Clause, DimacsError, DimacsWarning, Formula, check_model,
                      formula_from_ints, normalize_literals, parse_dimacs,
                      render_dimacs)
from .protocol import (AddClause, BOTTOM, Choice, ChoiceRequest, Driver,
                       EventKind, Fallback, Freeze, FreezeRequest,
                       ProtocolViolation, Unroll)
from .engine import (Engine, SATISFIABLE, SolveResult, SolverConfig, Stats,
                     UNKNOWN, UNSATISFIABLE, solve)
from .drivers import (ActivityDriver, FallbackNowDriver, PigeonholeDriver,
                      ScriptedDriver, TrailMirrorDriver, pigeonhole_formula)
from .simplify import SimplifiedFormula, simplify
from .wire import WireDriver, run_child

__version__ = "0.1.0"

__all__ = [
    "AddClause", "ActivityDriver", "BOTTOM", "Choice", "ChoiceRequest",
    "Clause", "DimacsError", "DimacsWarning", "Driver", "Engine", "EventKind",
    "Fallback", "FallbackNowDriver", "Formula", "Freeze", "FreezeRequest",
    "PigeonholeDriver", "ProtocolViolation", "SATISFIABLE", "ScriptedDriver",
    "SimplifiedFormula", "SolveResult", "SolverConfig", "Stats",
    "TrailMirrorDriver", "UNKNOWN", "UNSATISFIABLE", "Unroll", "WireDriver",
    "check_model", "formula_from_ints", "normalize_literals", "parse_dimacs",
    "pigeonhole_formula", "render_dimacs", "run_child", "simplify", "solve",
]
