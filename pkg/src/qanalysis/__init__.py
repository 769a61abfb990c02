"""Directed q-analysis of simple directed graphs.

Enumerates the directed flag complex and computes (q,i,j)-digraphs under
two nearness definitions via three interchangeable engines (top-down,
hybrid, bottom-up) with pluggable parallel execution strategies.
"""

from .bottomup import get_q_bottomup, supersimplex_closure
from .complex import (
    LAST,
    FlagComplex,
    Simplex,
    build_flag_complex,
    coface_scan,
    face,
    faces_of_dim,
    hat_face,
    includes,
)
from .generators import GeneratorSpec, erdos_renyi, layered_dag, tournament
from .graph import DirectedGraph, GraphFormatError, load_graph
from .hybrid import (
    CofaceCache,
    build_coface_cache,
    compute_E_q1,
    compute_inclusions,
    get_q_hybrid,
    get_qhat_hybrid,
    propagate_up,
)
from .nearness import (
    Definition,
    Direction,
    is_q_near_decomposition,
    is_q_near_hat,
    is_q_near_novel,
)
from .parallel import Strategy, StrategyKind, run_sharded
from .qdigraph import PROV_I, PROV_II, QDigraph, write_simplices_tsv
from .topdown import get_q_topdown, get_q_topdown_multi

__version__ = "0.1.0"

__all__ = [
    "LAST",
    "PROV_I",
    "PROV_II",
    "CofaceCache",
    "Definition",
    "DirectedGraph",
    "Direction",
    "FlagComplex",
    "GeneratorSpec",
    "GraphFormatError",
    "QDigraph",
    "Simplex",
    "Strategy",
    "StrategyKind",
    "build_coface_cache",
    "build_flag_complex",
    "coface_scan",
    "compute_E_q1",
    "compute_inclusions",
    "erdos_renyi",
    "face",
    "faces_of_dim",
    "get_q_bottomup",
    "get_q_hybrid",
    "get_q_topdown",
    "get_q_topdown_multi",
    "get_qhat_hybrid",
    "hat_face",
    "includes",
    "is_q_near_decomposition",
    "is_q_near_hat",
    "is_q_near_novel",
    "layered_dag",
    "load_graph",
    "propagate_up",
    "run_sharded",
    "supersimplex_closure",
    "tournament",
    "write_simplices_tsv",
]
