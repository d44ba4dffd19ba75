"""Cospectral graphs from the graph-theoretical partial transpose (GTPT)."""

__version__ = "0.1.0"

from .graph import (
    BlockAdjacency,
    ClusteredGraph,
    GraphError,
    VertexLabel,
    block_matrix,
    degree_sequence,
    from_adjacency,
    from_blocks,
    from_edges,
    induced_bipartite,
    load,
    loads,
    to_dot,
)
from .transpose import is_partially_symmetric, partial_transpose, partial_transpose_blocks
from .spectral import CharPoly, approx_eigenvalues, are_cospectral, char_poly
from .iso import are_isomorphic, canonical_form
from .conditions import (
    CospectralCertificate,
    NeighborhoodIndexSet,
    SimilarityWitness,
    blocks_commuting_normal,
    certify_cospectral_by_blocks,
    commuting_condition,
    is_normal_binary,
    is_similar_to_transpose,
    nbd_index_set,
    normality_condition,
    similarity_witness,
)
from .constructions import (
    ConstructionError,
    alternate_clustering,
    build_nonnormal_model,
    pad_bipartite,
    procedure_1,
    procedure_2,
)
from .enumeration import CountingMode, EnumerationReport, ModelSpec, enumerate_kappa, model_base, verify_pair
