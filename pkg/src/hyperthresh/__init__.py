"""Exact desk-scale workbench for perfect matchings in k-uniform hypergraphs."""

from .hypercore import (
    BinomialOverflowError,
    Hypergraph,
    InvalidInputError,
    InvalidQueryError,
    binom,
    random_hypergraph,
)
from .extremal import (
    Bipartition,
    CertificateNotApplicableError,
    ExtremalSpec,
    ParityCertificate,
    ThresholdReport,
    build,
    codegree_threshold_formula,
    edit_distance,
    extremal_family,
    min_degree_closed_form,
    nearest_bipartition,
    parity_certificate,
    threshold,
)
from .matching import (
    Matching,
    SearchBudgetExceeded,
    find_perfect_matching,
    max_matching_greedy,
    verify_matching,
)
from .absorbing import (
    AbsorptionCertificate,
    PipelineReport,
    build_absorbing_matching,
    enumerate_absorbing_2ksets,
    enumerate_absorbing_ksets,
    is_absorbing,
    pm_via_absorption,
)
from .auxgraph import (
    AuxGraph,
    CaseHoldsError,
    PartitionColoring,
    StructureReport,
    aux_adjacent,
    aux_edge_count,
    bad_kset_count,
    case_a,
    case_b,
    cd_counts,
    classify_pairs,
    derive_partition,
    edit_distance_model,
    good_left_count,
    parity_coloring,
    recovery_report,
)
from .lemmas import (
    CheckResult,
    clique_shadow_bound_check,
    evensum_asymptotic_check,
    pair_discrepancy_count,
    pair_discrepancy_total,
    parity_split_sums,
    span_profile,
    verify_profile_identities,
)

__version__ = "0.1.0"
