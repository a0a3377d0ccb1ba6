"""Square 2-complexes: curvature, CAT(0) recognition, collapses and geodesics."""

from .collapse import (
    STRATEGIES,
    CollapseSequence,
    FreeFacePair,
    collapse_all,
    elementary_collapse,
    filtration,
    free_edges,
    free_vertices,
    spine,
    verify_sequence,
)
from .core import (
    ParseError,
    SquareComplex,
    ball,
    euler_characteristic,
    link_graph,
    parse_complex,
    read_complex,
    serialize_complex,
    validate,
)
from .curvature import (
    Cat0Verdict,
    cell_curvature,
    check_cat0,
    curvature_report,
    is_median,
    is_npc,
    link_girth,
    vertex_curvature,
)
from .generators import generate

__version__ = "0.1.0"

__all__ = [
    "STRATEGIES",
    "Cat0Verdict",
    "CollapseSequence",
    "FreeFacePair",
    "ParseError",
    "SquareComplex",
    "ball",
    "cell_curvature",
    "check_cat0",
    "collapse_all",
    "curvature_report",
    "elementary_collapse",
    "euler_characteristic",
    "filtration",
    "free_edges",
    "free_vertices",
    "generate",
    "is_median",
    "is_npc",
    "link_girth",
    "link_graph",
    "parse_complex",
    "read_complex",
    "serialize_complex",
    "spine",
    "validate",
    "verify_sequence",
    "vertex_curvature",
]
