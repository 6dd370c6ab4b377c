"""Strict integral rectangle transformation (SIRTP) solvers and checks."""

from .analysis import (
    CheckReport,
    Mode,
    Pattern,
    check_isomorphism,
    check_ratio_lemma,
    check_tiling,
    extract_pattern,
    is_slat,
    patterns_equal,
    slat_refine,
    verify_pair,
)
from .core import (
    Dims,
    IrtpInstance,
    Partition,
    PartitionPair,
    PlacedRect,
    SirtpInstance,
    SolveTrace,
    area,
    isqrt,
)
from .oracle import Budget, OracleResult, enumerate_tilings, min_sirtp, tiles_with_multiset
from .solver import (
    AlignmentRule,
    algsirtp_partition,
    algsirtp_size,
    euclid_irtp,
    euclid_sirtp,
    lower_bound,
    reduce_srtp,
    square_transfer_pair,
)

__version__ = "0.1.0"
