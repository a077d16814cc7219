"""cpcgraph: quantum stabilizer codes from classical block codes.

Build codes by combining a bit-flip and a phase-flip classical code into an
operational qubit graph, annotate the indirect error-propagation paths,
translate to a classical factor graph, extract stabilizers over GF(2), and
analyse syndromes, distance and Monte Carlo logical error rates.
"""

from .analysis import (
    LookupDecoder,
    MonteCarloResult,
    PartitionTags,
    SyndromeTable,
    build_lookup_decoder,
    distance,
    monte_carlo,
    signature_profile,
    syndrome,
    syndrome_table,
)
from .builder import (
    DesignSession,
    SearchResult,
    apply_cross_checks,
    combine,
    recover_mc_from_syndromes,
    search_cross_checks,
)
from .bundle import CodeBundle, build_bundle
from .classical import ClassicalCode, builtin, classical_distance, encode
from .gf2 import BitMatrix, BitVec, ShapeError, in_row_space, mat_mul, rank
from .opgraph import OperationalGraph, annotate, edge_toggle, simplify
from .stabilizer import (
    CpcAdjacency,
    PauliError,
    QuantumParityMatrix,
    check_commutation,
    extract_adjacency,
    pauli_strings,
    quantum_parity_matrix,
)
from .translation import ClassicalFactorGraph, factor_syndrome, translate, unconnected_variables

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVec",
    "ClassicalCode",
    "ClassicalFactorGraph",
    "CodeBundle",
    "CpcAdjacency",
    "DesignSession",
    "LookupDecoder",
    "MonteCarloResult",
    "OperationalGraph",
    "PartitionTags",
    "PauliError",
    "QuantumParityMatrix",
    "SearchResult",
    "ShapeError",
    "SyndromeTable",
    "annotate",
    "apply_cross_checks",
    "build_bundle",
    "build_lookup_decoder",
    "builtin",
    "check_commutation",
    "classical_distance",
    "combine",
    "distance",
    "edge_toggle",
    "encode",
    "extract_adjacency",
    "factor_syndrome",
    "in_row_space",
    "mat_mul",
    "monte_carlo",
    "pauli_strings",
    "quantum_parity_matrix",
    "rank",
    "recover_mc_from_syndromes",
    "search_cross_checks",
    "signature_profile",
    "simplify",
    "syndrome",
    "syndrome_table",
    "translate",
    "unconnected_variables",
]
