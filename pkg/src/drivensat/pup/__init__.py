"""Partner-units benchmark: instances, CNF encoding, guided drivers."""

from .model import (PupInstance, PupSolution, parse_instance, render_instance,
                    validate)
from .encoding import PupEncoding, encode
from .generators import FAMILIES, generate, min_units
from .heuristics import VARIANTS, PupDriver, pup_driver, quickpup_order

__all__ = [
    "FAMILIES", "PupDriver", "PupEncoding", "PupInstance", "PupSolution",
    "VARIANTS", "encode", "generate", "min_units", "parse_instance",
    "pup_driver", "quickpup_order", "render_instance", "validate",
]
