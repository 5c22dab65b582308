"""Exact Schubert calculus on complete and partial flag manifolds.

Classical, quantum, and universal Schubert polynomials; quantum cohomology
products and Gromov–Witten structure constants; everything over exact integer
and rational arithmetic.
"""

from .perm import (
    FlagShape,
    all_permutations,
    compose,
    dual,
    hyperquot_dim,
    identity,
    inverse,
    lemma_es_check,
    length,
    longest_element,
    rank_fn,
    reduced_word,
    sn_elements,
    transposition,
    validate,
)
from .poly import (
    EchelonSystem,
    LinearSolution,
    NoSolutionError,
    NonIntegralError,
    Polynomial,
    SolveError,
    VerificationError,
    c_var,
    g_var,
    q_var,
    sigma_var,
    solve_linear_expansion,
    x_var,
)
from .schubert import (
    EDecomposition,
    divided_difference,
    e_decomposition,
    elementary_poly,
    schubert_poly,
)
from .universal import (
    PathAlphabet,
    g_from_c,
    kernel_chern_check,
    path_poly,
    path_poly_range,
    quantum_e,
    quantum_schubert,
    specialize_classical,
    specialize_quantum,
    universal_schubert_c,
    universal_schubert_g,
)
from .qring import (
    QuantumClass,
    QuantumRing,
    RingError,
    classical_product,
    expand_in_quantum_basis,
    gromov_witten,
    quantum_product,
    quantum_product_multi,
    quantum_ring,
    relations,
)
from .partial import (
    PartialRing,
    index_sets,
    kernel_chern_partial_check,
    kernel_chern_partial_report,
    partial_gw,
    partial_quantum_product,
    partial_quantum_schubert,
    partial_relations,
    partial_ring,
    partial_universal_schubert_c,
    tilde_E,
)

__version__ = "0.1.0"

__all__ = [
    "FlagShape",
    "all_permutations",
    "compose",
    "dual",
    "hyperquot_dim",
    "identity",
    "inverse",
    "lemma_es_check",
    "length",
    "longest_element",
    "rank_fn",
    "reduced_word",
    "sn_elements",
    "transposition",
    "validate",
    "EchelonSystem",
    "LinearSolution",
    "NoSolutionError",
    "NonIntegralError",
    "Polynomial",
    "SolveError",
    "VerificationError",
    "c_var",
    "g_var",
    "q_var",
    "sigma_var",
    "solve_linear_expansion",
    "x_var",
    "EDecomposition",
    "divided_difference",
    "e_decomposition",
    "elementary_poly",
    "schubert_poly",
    "PathAlphabet",
    "g_from_c",
    "kernel_chern_check",
    "path_poly",
    "path_poly_range",
    "quantum_e",
    "quantum_schubert",
    "specialize_classical",
    "specialize_quantum",
    "universal_schubert_c",
    "universal_schubert_g",
    "QuantumClass",
    "QuantumRing",
    "RingError",
    "classical_product",
    "expand_in_quantum_basis",
    "gromov_witten",
    "quantum_product",
    "quantum_product_multi",
    "quantum_ring",
    "relations",
    "PartialRing",
    "index_sets",
    "kernel_chern_partial_check",
    "kernel_chern_partial_report",
    "partial_gw",
    "partial_quantum_product",
    "partial_quantum_schubert",
    "partial_relations",
    "partial_ring",
    "partial_universal_schubert_c",
    "tilde_E",
]
