"""Source text for normal programs, readable by the frontend."""

from __future__ import annotations

from typing import Optional

from ..program import KCombinedProgram, NormalProgram


def program_source(p: NormalProgram, outermost: bool = True) -> str:
    """Rules of ``p`` as text.

    Parameters of the outermost level become ``#external`` declarations.
    At inner levels parameters are recomputed from sharing, so unused
    vocabulary atoms are declared ``#external`` only to keep them in the
    vocabulary.
    """
    lines = []
    occurring = p.occurring_atoms
    declared = set(p.parameters) if outermost else set(p.vocabulary - occurring)
    lines += [f"#external {a}." for a in sorted(declared)]
    lines += [str(r) for r in p.rules]
    return "\n".join(lines) + ("\n" if lines else "")


def combined_sources(c: KCombinedProgram) -> list[str]:
    return [program_source(p, outermost=(i == 0)) for i, p in enumerate(c.levels)]
