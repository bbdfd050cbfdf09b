"""Sprague-Grundy values and outcomes of integral subtraction-division games."""

from .engine import (
    Convention,
    GameSpec,
    GrundyTable,
    Outcome,
    build_table,
    options,
    outcome,
    validate_spec,
)
from .closedform import family_for, fast_grundy, fast_outcome, gen_mark_sequences

__version__ = "0.1.0"
