"""(1,1,3)- and (1,1,2)-packing colorings of subcubic graphs via bipartition local search."""

from .bipartition import (
    Bipartition,
    Move,
    MoveKind,
    Potential,
    RepairTrace,
    apply_move,
    audit,
    find_improving_move,
    greedy_init,
    local_optimize,
    same_side_structure,
)
from .colorer import Mode, color, run
from .coloring import S112, S113, Coloring, PackingSequence
from .generators import gen_1_saturated, gen_3_irregular, gen_random_subcubic, named
from .graph import Graph, distance, is_3_irregular, is_i_saturated, is_subcubic, load_edge_list, subdivide
from .oracle import exact_colorable, min_packing_k, verify_coloring

__version__ = "0.1.0"

__all__ = [
    "S112",
    "S113",
    "Bipartition",
    "Coloring",
    "Graph",
    "Mode",
    "Move",
    "MoveKind",
    "PackingSequence",
    "Potential",
    "RepairTrace",
    "apply_move",
    "audit",
    "color",
    "distance",
    "exact_colorable",
    "find_improving_move",
    "gen_1_saturated",
    "gen_3_irregular",
    "gen_random_subcubic",
    "greedy_init",
    "is_3_irregular",
    "is_i_saturated",
    "is_subcubic",
    "load_edge_list",
    "local_optimize",
    "min_packing_k",
    "named",
    "run",
    "same_side_structure",
    "subdivide",
    "verify_coloring",
]
