"""Finite additively idempotent semirings: tables, terms, satisfaction, freeness, derivations, census."""

from .algebra import (AxiomError, FiniteAiSemiring, TableShapeError, adjoin_zero, direct_product,
                      homomorphisms, idempotent_extension, isomorphic, isomorphism, load_semiring,
                      quotient, subalgebras, subdirect_decomposition_check, validate)
from .catalog import NAMES, catalog
from .checker import (crossvalidate, find_countermodel, holds, oracle_adjoin_zero, oracle_d2,
                      oracle_s7, oracle_s53)
from .families import (basis_545, basis_634, basis_vm, delta_star, enumerate_theta, make_delta,
                       make_q, make_sigma, make_u, verify_lemma41)
from .freeness import find_embedding, is_free
from .terms import Statement, Term, Word, is_subterm, parse_statement, parse_term

__all__ = [
    "AxiomError", "FiniteAiSemiring", "TableShapeError", "adjoin_zero", "direct_product",
    "homomorphisms", "idempotent_extension", "isomorphic", "isomorphism", "load_semiring",
    "quotient", "subalgebras", "subdirect_decomposition_check", "validate", "NAMES", "catalog",
    "crossvalidate", "find_countermodel", "holds", "oracle_adjoin_zero", "oracle_d2", "oracle_s7",
    "oracle_s53", "basis_545", "basis_634", "basis_vm", "delta_star", "enumerate_theta",
    "make_delta", "make_q", "make_sigma", "make_u", "verify_lemma41", "find_embedding", "is_free",
    "Statement", "Term", "Word", "is_subterm", "parse_statement", "parse_term",
]
