"""Exact laboratory for quantitative frameproof codes and hypergraphs."""

from .core import (
    DisjointnessParams,
    FormatError,
    FrameproofParams,
    GroundSet,
    GuardError,
    IndexMultiset,
    ParameterError,
    SubsetFamily,
    WitnessError,
    enumerate_subsets,
    family_from_json,
    is_disjoint_collection,
    lambda_of,
    mask_from_points,
    own_subset_index,
    points_from_mask,
)
from .verify import (
    Code,
    DescendantReport,
    FocalWitness,
    Guards,
    OwnCensus,
    code_from_json,
    descendant_alphabet,
    distinctify_witness,
    find_critical_focal,
    find_focal_code,
    find_focal_hypergraph,
    naive_find_focal,
    own_subsequence_census,
    validate_witness,
)
from .matching import (
    CyclicPartitionPlan,
    MatchingCertificate,
    MatchingInstance,
    cyclic_partition_plan,
    find_violating_collection,
    matching_closed_bounds,
    matching_number_brute,
    matching_number_exact,
    star_family,
)
from .constructions import (
    DistanceCertificate,
    FrameproofCheck,
    InducedPacking,
    MultipartiteView,
    Packing,
    certify_frameproof_by_distance,
    code_to_multipartite,
    faithful_code_family,
    greedy_multiset_partition,
    greedy_packing,
    induced_packing_family,
    load_design,
    matching_complement_pattern,
    packing_to_frameproof,
    rs_code,
)
from .bounds import BoundEntry, BoundReport, Hypothesis, code_bounds, hypergraph_bounds
from .gf import GF

__version__ = "0.1.0"
