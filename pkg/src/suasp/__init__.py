"""Solvers for combined logic programs under the stable-unstable semantics."""

from .program import (
    FRESH_PREFIX,
    Atom,
    KCombinedProgram,
    NormalProgram,
    Rule,
    SymbolTable,
    is_model,
    is_stable,
    is_stable_unstable,
    least_model,
    reduct,
    rule,
)

__version__ = "0.1.0"
