"""Index computations, searches and verifiers for sequences over Z_n."""

__version__ = "0.1.0"

from .core import SequenceParseError, ZnSequence, is_prime, least_positive_residue, units
from .engine import (IndexReport, RepetitionScanReport, SubseqWitness,
                     best_interval_reach, find_index_n_subsequence, index_of,
                     interval_reach, lemke_kleitman_check,
                     scan_repetition_guarantee, short_zero_sum, sum_index_set)
from .extremal import ExtremalReport, forcing_length, forcing_length_distinct
from .family import (CounterexampleSpec, FamilyVerification, build_counterexample,
                     t_lower_bound, verify_family)
from .farey import (BoundEvaluation, FareySet, PartitionGapError, PartitionResult,
                    audit_case_inequalities, check_adjacency, eval_cross_class_bound,
                    eval_length_bound, eval_reach_class_bound, farey_set,
                    partition_sequence, reach_class, residue_subset_hit)
from .halfsets import (FourSumReport, HalfSet, HalfSetScan, check_half_set_sizes,
                       enumerate_min_zero_sum_4, half_set, scan_half_set_minimum,
                       verify_foursum)

__all__ = [
    "BoundEvaluation",
    "CounterexampleSpec",
    "ExtremalReport",
    "FamilyVerification",
    "FareySet",
    "FourSumReport",
    "HalfSet",
    "HalfSetScan",
    "IndexReport",
    "PartitionGapError",
    "PartitionResult",
    "RepetitionScanReport",
    "SequenceParseError",
    "SubseqWitness",
    "ZnSequence",
    "audit_case_inequalities",
    "best_interval_reach",
    "build_counterexample",
    "check_adjacency",
    "check_half_set_sizes",
    "enumerate_min_zero_sum_4",
    "eval_cross_class_bound",
    "eval_length_bound",
    "eval_reach_class_bound",
    "farey_set",
    "find_index_n_subsequence",
    "forcing_length",
    "forcing_length_distinct",
    "half_set",
    "index_of",
    "interval_reach",
    "is_prime",
    "least_positive_residue",
    "lemke_kleitman_check",
    "partition_sequence",
    "reach_class",
    "residue_subset_hit",
    "scan_half_set_minimum",
    "scan_repetition_guarantee",
    "short_zero_sum",
    "sum_index_set",
    "t_lower_bound",
    "units",
    "verify_family",
    "verify_foursum",
]
