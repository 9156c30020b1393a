"""Local complementation, 2-local complementation and LC/LU tools for graph states."""

from lulc.errors import FormatError, LulcError, PreconditionError, ResourceLimitError
from lulc.graph import (
    BipartiteSplit,
    Graph,
    VertexSet,
    bipartite_isomorphic,
    local_complement,
    pivot,
)
from lulc.local import (
    find_one_lc_witness,
    is_2_incident,
    one_local_complement,
    property_profile,
    two_local_complement,
)
from lulc.recognizer import lc_equivalent_linear, lc_equivalent_orbit, lc_orbit
from lulc.reduction import reduce, replay
from lulc.triortho import check_lemma2, graph_to_matrix, is_unital, matrix_to_graph

__version__ = "0.1.0"

__all__ = [
    "BipartiteSplit",
    "FormatError",
    "Graph",
    "LulcError",
    "PreconditionError",
    "ResourceLimitError",
    "VertexSet",
    "bipartite_isomorphic",
    "check_lemma2",
    "find_one_lc_witness",
    "graph_to_matrix",
    "is_2_incident",
    "is_unital",
    "lc_equivalent_linear",
    "lc_equivalent_orbit",
    "lc_orbit",
    "local_complement",
    "matrix_to_graph",
    "one_local_complement",
    "pivot",
    "property_profile",
    "reduce",
    "replay",
    "two_local_complement",
]
