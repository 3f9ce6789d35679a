"""Resource caps and solver settings."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    max_ground_atoms: int = 1_000_000
    # brute-force oracles
    bf_max_atoms: int = 20
    bf_max_qbf_vars: int = 16
    bf_max_strategy_pairs: int = 1_000_000
    bf_max_graph_nodes: int = 10

    @classmethod
    def from_env(cls, base: "Caps | None" = None) -> "Caps":
        caps = base or cls()
        value = os.environ.get("SU_MAX_GROUND_ATOMS")
        if value:
            caps = replace(caps, max_ground_atoms=int(value))
        return caps


DEFAULT_CAPS = Caps()
