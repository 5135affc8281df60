"""Block systems, derangement graphs, coset-action comparisons and clique constructions."""

from derangement_lab.analysis.blocks import (
    BlockSystem,
    NormalSeries,
    block_kernel,
    is_normal_system,
    is_primitive,
    is_quasiprimitive,
    max_normal_series,
    minimal_block_system,
    normal_partitions,
)
from derangement_lab.analysis.dgraph import (
    CliqueResult,
    DerangementGraph,
    build_graph,
    clique_number,
    coclique_number,
    derangement_set,
)
from derangement_lab.analysis.kronecker import (
    KroneckerReport,
    kronecker_equivalent,
    pigeonhole_bound_check,
    scan_pairs,
)
from derangement_lab.analysis.constructions import (
    ChainCliqueCertificate,
    chain_clique,
    partition_avoiding_subset,
)

__all__ = [
    "BlockSystem",
    "NormalSeries",
    "block_kernel",
    "is_normal_system",
    "is_primitive",
    "is_quasiprimitive",
    "max_normal_series",
    "minimal_block_system",
    "normal_partitions",
    "CliqueResult",
    "DerangementGraph",
    "build_graph",
    "clique_number",
    "coclique_number",
    "derangement_set",
    "KroneckerReport",
    "kronecker_equivalent",
    "pigeonhole_bound_check",
    "scan_pairs",
    "ChainCliqueCertificate",
    "chain_clique",
    "partition_avoiding_subset",
]
