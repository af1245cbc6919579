"""Canonical bases of the level-one Fock space and runner insertion."""

from .abacus import Abacus, abacus_from_partition, insert_empty_runner, partition_from_abacus, plus
from .canonical import (
    BasisCache,
    BlockMatrix,
    CanonicalBasisElement,
    ComparisonReport,
    b_poly,
    bar_matrix,
    block_crystal_matrix,
    canonical_basis,
    canonical_basis_general,
    canonical_basis_regular,
    decomposition_number,
    verify_runner_insertion,
)
from .fock import FockVector, apply_F, apply_F_divided, apply_V, theta, truncate
from .laurent import Laurent
from .partition import Partition, parse_partition, format_partition

__version__ = "0.1.0"
