"""Mutation-based test case prioritization.

Kill-driven (GRK), distinguishment-driven (GRD), hybrid (HYB-w) and
multi-objective (MOK/MOD) prioritizers over externally supplied kill,
coverage and fault matrices, with APFD-family metrics, nonparametric
comparison and Mutant Distinguishment Graphs.
"""

from .adequacy import (
    ORIGINAL,
    DistinguishmentState,
    MutantGroupReport,
    distinguishment_state,
    dvector,
    indistinguishable_groups,
    is_d_adequate,
    is_k_adequate,
    kills,
    unique_count,
)
from .greedy import GreedyConfig, prioritize_greedy
from .mdg import build_mdg, chain_consistency, render_dot
from .metrics import apfd, apfd_by_positions, apfd_c, apmd, apmk, apxx, pfd_curve
from .model import (
    CostVector,
    CoverageMatrix,
    FaultMatrix,
    KillMatrix,
    Ordering,
    parse_matrix,
    validate_bundle,
    write_matrix,
)
from .moo import MooConfig, ParetoFront, nsga2, select_mod, select_mok
from .rng import SplitMix64, derive_seed, next_random
from .stats import a12, compare, mann_whitney_u, pearson, spearman

__version__ = "0.1.0"
