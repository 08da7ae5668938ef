"""Separation and traceability of Reed-Solomon codes over finite fields.

Modules, bottom-up: ``finite_field`` (GF(p^m) arithmetic), ``rs_code``
(evaluation codes), ``separability`` (set covers E+F and EF),
``collusion`` (brute-force code properties), ``subspace_subcode`` (binary
subcodes and the coset bound) and ``classifier`` (the rule chain).
"""

from .classifier import Rule, Status, Verdict, build_table, classify, classify_with_oracle, nonseparating_at
from .collusion import ExplicitCode, NonSepWitness, is_ipp, is_separating, is_ta, witness_from_separable_image
from .finite_field import FieldElement, FieldSpec, SubspaceSpec, field_of_order, make_field
from .rs_code import Polynomial, RsSpec, encode, threshold_k
from .separability import Mode, SearchBudget, SepWitness, check_witness, search_separable
from .subspace_subcode import best_v, exact_K, is_nontrivial, lower_bound_L

__version__ = "0.1.0"

__all__ = [
    "ExplicitCode", "FieldElement", "FieldSpec", "Mode", "NonSepWitness", "Polynomial", "Rule", "RsSpec",
    "SearchBudget", "SepWitness", "Status", "SubspaceSpec", "Verdict", "best_v", "build_table", "check_witness",
    "classify", "classify_with_oracle", "encode", "exact_K", "field_of_order", "is_ipp", "is_nontrivial",
    "is_separating", "is_ta", "lower_bound_L", "make_field", "nonseparating_at", "search_separable",
    "threshold_k", "witness_from_separable_image",
]
