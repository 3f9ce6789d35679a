from .assemble import Level, assemble, compile_component
from .extended import GCard, GChoice, GCond, GElement, GLit, GroundProgram, GRule
from .grounder import ground
from .normalize import FreshNames, normalize
from .parser import parse
from .syntax import ProgramAST

__all__ = [
    "FreshNames", "GCard", "GChoice", "GCond", "GElement", "GLit", "GRule", "GroundProgram",
    "Level", "ProgramAST", "assemble", "compile_component", "ground", "normalize", "parse",
]
