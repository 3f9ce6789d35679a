"""Turn component program texts into a validated k-combined program."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..errors import SemanticsError
from ..program import KCombinedProgram, NormalProgram
from .extended import GroundProgram
from .grounder import ground
from .normalize import normalize
from .parser import parse


@dataclass(frozen=True)
class Level:
    ground: GroundProgram
    program: NormalProgram


def compile_component(text: str, instance: Optional[str] = None,
                      max_ground_atoms: Optional[int] = None) -> Level:
    ast = parse(text)
    facts = parse(instance) if instance else None
    gp = ground(ast, facts, max_ground_atoms)
    return Level(gp, normalize(gp))


def assemble(components: Sequence[str], instance: Optional[str] = None,
             max_ground_atoms: Optional[int] = None) -> KCombinedProgram:
    """Build a k-combined program from texts ordered generator first, innermost last.

    The instance text is appended to every component.  The outermost level is
    parameterized by its ``#external`` atoms; every inner level by the
    non-auxiliary atoms it shares with the level above.  Shared atoms that are
    facts at both levels are taken from the level above (their fact rules are
    dropped from the inner level); any other shared atom defined at the inner
    level is a semantics error.
    """
    if not components:
        raise ValueError("at least one component is required")
    levels = [compile_component(text, instance, max_ground_atoms) for text in components]
    programs: list[NormalProgram] = []
    for idx, level in enumerate(levels):
        prog = level.program
        if idx == 0:
            params = frozenset(level.ground.externals)
            defined = params & prog.head_atoms
            if defined:
                raise SemanticsError(
                    f"#external atom {sorted(defined)[0]} of the outermost component also occurs in a rule head")
        else:
            upper = levels[idx - 1]
            params = programs[idx - 1].visible & prog.visible
            inherited = params & level.ground.facts & upper.ground.facts
            rules = [r for r in prog.rules if not (r.head in inherited and not r.pos_body and not r.neg_body)]
            prog = NormalProgram(tuple(rules), prog.vocabulary, frozenset())
            defined = params & prog.head_atoms
            if defined:
                raise SemanticsError(
                    f"shared atom {sorted(defined)[0]} occurs in a rule head of component {idx + 1}")
        programs.append(prog.with_parameters(params))
    return KCombinedProgram.chain(programs)
