"""Extremal multigraph toolkit: bounded-multiplicity families, layered
constructions, exact search, heavy-substructure reductions and the sparse
regime classification."""

from .core import (
    Multigraph,
    edge_product,
    edge_sum,
    is_sq_graph,
    max_product_with_sum,
    product_degree,
    violating_set,
)
from .constructions import (
    AdmissiblePair,
    Partition,
    TuranSpec,
    Weighting,
    build_iterated,
    build_turan,
    entropy_density,
    is_s_dominant,
    iterated_entropy,
    pi_iterated,
    pi_max,
    product_optimal_weighting,
    sigma,
    sigma_iterated,
    x_star,
)
from .solver import (
    ConjectureReport,
    GirthResult,
    SearchBudget,
    SearchResult,
    conjecture_check,
    ex_pi_exact,
    ex_sigma_exact,
    girth_turan,
)
from .reductions import (
    AllLight,
    InLowerClass,
    LowDegreeWitness,
    PeelResult,
    mt_pipeline,
    peel,
    symmetrize,
)
from .sparse import Bounds, ExactValue, SparseRegime, classify, sparse_value
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "AdmissiblePair",
    "AllLight",
    "Bounds",
    "ConjectureReport",
    "ExactValue",
    "GirthResult",
    "InLowerClass",
    "LowDegreeWitness",
    "Multigraph",
    "Partition",
    "PeelResult",
    "SearchBudget",
    "SearchResult",
    "SparseRegime",
    "TuranSpec",
    "VerificationReport",
    "Weighting",
    "build_iterated",
    "build_turan",
    "classify",
    "conjecture_check",
    "edge_product",
    "edge_sum",
    "entropy_density",
    "ex_pi_exact",
    "ex_sigma_exact",
    "girth_turan",
    "is_s_dominant",
    "is_sq_graph",
    "iterated_entropy",
    "max_product_with_sum",
    "mt_pipeline",
    "peel",
    "pi_iterated",
    "pi_max",
    "product_degree",
    "product_optimal_weighting",
    "run_suite",
    "sigma",
    "sigma_iterated",
    "sparse_value",
    "symmetrize",
    "violating_set",
    "x_star",
]
