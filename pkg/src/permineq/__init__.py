"""Permutation pattern containment statistics and numeric checks of
entropy- and correlation-based containment inequalities."""
from .census import (ChainSpec, OccurrenceCensus, census, conditional_avoidance_counts,
                     induced_chain)
from .entropy import (FiniteDistribution, JointDistribution, boundedness_check, entropy,
                      shearer_check)
from .errors import CapacityError, InvalidInputError, PreconditionError
from .measures import (ChainMeasure, SubsetMeasure, fkg_check, is_log_supermodular,
                       measure_of, nu, tail_mass)
from .patterns import (OccurrenceSet, contained_patterns, occ, occurrence_oracle,
                       occurrence_set)
from .perm import (Perm, enumerate_sn, enumerate_subsets, random_permutation, reduce,
                   subsequence)
from .report import InequalityReport
from .verify import (conjecture_scan, verify_lemma3, verify_t1a, verify_t1b, verify_t2a,
                     verify_t2b)

__all__ = [
    "CapacityError", "ChainMeasure", "ChainSpec", "FiniteDistribution", "InequalityReport",
    "InvalidInputError", "JointDistribution", "OccurrenceCensus", "OccurrenceSet", "Perm",
    "PreconditionError", "SubsetMeasure", "boundedness_check", "census",
    "conditional_avoidance_counts", "conjecture_scan", "contained_patterns", "entropy",
    "enumerate_sn", "enumerate_subsets", "fkg_check", "induced_chain", "is_log_supermodular",
    "measure_of", "nu", "occ", "occurrence_oracle", "occurrence_set", "random_permutation",
    "reduce", "shearer_check", "subsequence", "tail_mass", "verify_lemma3", "verify_t1a",
    "verify_t1b", "verify_t2a", "verify_t2b",
]
__version__ = "0.1.0"
