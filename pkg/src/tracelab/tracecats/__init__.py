from .core import (
    AxiomId,
    BlockMorphism,
    CategoryId,
    DenseMorphism,
    KrausMorphism,
    ObjectMismatchError,
    Reason,
    StochMorphism,
    TraceOutcome,
)
from .categories import (
    Embedding,
    get_category,
    induced_trace,
    is_trace_nonincreasing,
    q_total_trace,
    NoConvergenceError,
)
from .axioms import CheckReport, check_axiom, generate_sample, run_axiom_samples

__all__ = [
    "AxiomId",
    "BlockMorphism",
    "CategoryId",
    "CheckReport",
    "DenseMorphism",
    "Embedding",
    "KrausMorphism",
    "NoConvergenceError",
    "ObjectMismatchError",
    "Reason",
    "StochMorphism",
    "TraceOutcome",
    "check_axiom",
    "generate_sample",
    "get_category",
    "induced_trace",
    "is_trace_nonincreasing",
    "q_total_trace",
    "run_axiom_samples",
]
