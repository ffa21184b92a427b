"""Write drivensat branching drivers as small Python scripts.

The solver runs a driver as a child process and speaks a line protocol
over its standard streams.  This package hides the transport: subclass
DriverBase, return response objects from get_choice, and hand an
instance to serve().  The solver side points at the script with
`--driver "extern:python3 my_driver.py"`.
"""

from .base import DriverBase, EVENT_NAMES
from .responses import AddClause, BOTTOM, Choice, Fallback, Response, Unroll
from .serve import WireFormatError, checksum, serve
from .view import InterpretationView

__version__ = "0.1.0"

__all__ = [
    "AddClause", "BOTTOM", "Choice", "DriverBase", "EVENT_NAMES", "Fallback",
    "InterpretationView", "Response", "Unroll", "WireFormatError", "checksum",
    "serve",
]
