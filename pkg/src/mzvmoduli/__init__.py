"""Boundary combinatorics of the moduli spaces M_{0,n+3} and numerical
multiple zeta values."""
from .divisors import (
    Divisor,
    DisjointnessReport,
    blown_down_by_pushforward,
    blown_down_partitions,
    check_disjoint,
    check_vertex_avoidance,
    divisor_A,
    divisor_A_inductive,
    divisor_B,
)
from .labels import (
    CompositionIndex,
    CyclicOrder,
    EpsilonWord,
    MarkedSet,
    canonicalize_cycle,
    decode_composition,
    encode_epsilon,
    standard_order,
)
from .partitions import (
    WHOLE_SPACE,
    PartitionType,
    StablePartition,
    delta,
    enumerate_stable_partitions,
    is_arc_partition,
    parse_partition,
    partition_type,
    pushforward,
)
from .periods import (
    AnchorSequence,
    FramedMotiveReport,
    PeriodValue,
    framed_report,
    iterated_integral,
    mzv_integral,
    mzv_series,
)
from .stasheff import Face, cell_census, f_vector, faces
from .trees import (
    StableTree,
    contract_edge,
    partitions_from_tree,
    planar_embedding,
    stratum_signature,
    to_dot,
    tree_from_partitions,
)

__version__ = "0.1.0"

__all__ = [
    "AnchorSequence",
    "CompositionIndex",
    "CyclicOrder",
    "DisjointnessReport",
    "Divisor",
    "EpsilonWord",
    "Face",
    "FramedMotiveReport",
    "MarkedSet",
    "PartitionType",
    "PeriodValue",
    "StablePartition",
    "StableTree",
    "WHOLE_SPACE",
    "blown_down_by_pushforward",
    "blown_down_partitions",
    "canonicalize_cycle",
    "cell_census",
    "check_disjoint",
    "check_vertex_avoidance",
    "contract_edge",
    "decode_composition",
    "delta",
    "divisor_A",
    "divisor_A_inductive",
    "divisor_B",
    "encode_epsilon",
    "enumerate_stable_partitions",
    "f_vector",
    "faces",
    "framed_report",
    "is_arc_partition",
    "iterated_integral",
    "mzv_integral",
    "mzv_series",
    "parse_partition",
    "partition_type",
    "partitions_from_tree",
    "planar_embedding",
    "pushforward",
    "standard_order",
    "stratum_signature",
    "to_dot",
    "tree_from_partitions",
]
