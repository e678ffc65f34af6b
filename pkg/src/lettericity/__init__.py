"""Letter graphs, lettericity, and geometric grid classes of permutations."""

from .graph_core import Graph, contains_induced, emit_graph, generate, parse_graph, twin_reduce
from .letters import (
    CYCLIC_DECODER,
    Decoder,
    LetterRepresentation,
    StructuredPartition,
    lettericity_exact,
    realize,
    verify_representation,
    verify_theorem1_structure,
)
from .permutations import Permutation, avoids_all, contains_pattern, perm_graph
from .three_letter import NicePartition, build_word, is_nice, mfis_check, proper_orderings, recognize_cyclic3
from .grid_classes import (
    GridMatrix,
    SignVector,
    check_grid_letter_bridge,
    decoder_from_matrix,
    infer_signs,
    phi,
    psi,
    two_letter_grid_matrix,
)
from .width_params import (
    eval_expression,
    is_caterpillar_expression,
    lcw_expression_from_letters,
    nd_representation,
    neighbourhood_diversity,
    parse_expression,
)

__version__ = "0.1.0"
