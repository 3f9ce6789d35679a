from .clauses import encode_clauses, encode_qbf2, encode_qbfk, encode_sat_unsat, var_atom
from .reify import parse_reified, reify
from .render import combined_sources, program_source
from .templates import Encoding, encode_parity, encode_ponr, qbf_to_ponr

__all__ = [
    "Encoding",
    "combined_sources",
    "encode_clauses",
    "encode_parity",
    "encode_ponr",
    "encode_qbf2",
    "encode_qbfk",
    "encode_sat_unsat",
    "parse_reified",
    "program_source",
    "qbf_to_ponr",
    "reify",
    "var_atom",
]
