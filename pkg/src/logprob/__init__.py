"""Propositional natural deduction, event probabilities and density-filter Q-numbers."""

from .deduction import (
    Proof,
    ProofBuilder,
    Sequent,
    check_proof,
    countermodel,
    parse_proof,
    render_proof,
)
from .events import (
    ProbModel,
    TestScheme,
    b_eval,
    bernoulli_pmf,
    binomial_tail,
    lln_bound,
    t_sum,
    verify_b_identities,
)
from .formula import Atom, Conj, Neg, is_tautology, parse_formula, render_formula, truth_table
from .qnumbers import QNumber, classify, density, filter_laws_check, freq, in_filter, q_eq
from .synthesis import prove_tautology

__all__ = [
    "Atom", "Conj", "Neg", "parse_formula", "render_formula", "truth_table", "is_tautology",
    "Sequent", "Proof", "ProofBuilder", "check_proof", "countermodel", "parse_proof", "render_proof",
    "prove_tautology",
    "ProbModel", "TestScheme", "b_eval", "t_sum", "bernoulli_pmf", "binomial_tail", "lln_bound",
    "verify_b_identities",
    "QNumber", "freq", "density", "in_filter", "q_eq", "classify", "filter_laws_check",
]
