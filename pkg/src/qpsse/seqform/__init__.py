from .matrices import SeqFormMatrices, build_matrices, dump_matrices
from .plans import (
    PlanViolation,
    RealizationPlan,
    behavioral_to_realization,
    check_realization_plan,
    realization_to_behavioral,
)
from .relevance import RelevanceMap, relevance
from .sequences import EMPTY, SequenceTable, enumerate_sequences

__all__ = [
    "EMPTY",
    "PlanViolation",
    "RealizationPlan",
    "RelevanceMap",
    "SeqFormMatrices",
    "SequenceTable",
    "behavioral_to_realization",
    "build_matrices",
    "check_realization_plan",
    "dump_matrices",
    "enumerate_sequences",
    "realization_to_behavioral",
    "relevance",
]
