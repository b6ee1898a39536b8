"""Covariant-contravariant and conformance simulations over BCCSP terms:
decision procedures, axiom systems, proof objects and exhaustive sweeps."""

from .axioms import (
    A_CC_EQ,
    A_CC_PRE,
    A_CS,
    A_CS_EQ,
    AXIOM_SETS,
    AxiomSchema,
    AxiomSet,
    SideCondition,
    apply,
    load_axiom_set,
    match_at,
    parse_axiom_file,
)
from .harness import (
    EnumerationBounds,
    SweepReport,
    Violation,
    WitnessReport,
    coarsest_precong_sweep,
    completeness_sweep,
    degeneration_sweep,
    enumerate_terms,
    hierarchy_sweep,
    nonaxiomatizability_witness,
    soundness_sweep,
)
from .proofs import Proof, ProofCheck, ProofChecker, Step, verify_proof
from .provers import (
    BivariantAlphabetError,
    prove_cc_equiv,
    prove_cc_preorder,
    prove_conf_equiv,
    prove_conf_precong,
    prover_for,
)
from .semantics import (
    Checker,
    Judgement,
    RelationKind,
    bisimilar,
    cc_equiv,
    cc_simulates,
    check,
    conf_equiv,
    conf_precong,
    conf_simulates,
    holds,
    inverse_simulates,
    plain_simulates,
    ready_conf_simulates,
    ready_simulates,
)
from .syntax import ParseError, format_term, load_file, parse, parse_file
from .terms import NIL, Action, Alphabet, AlphabetError, Polarity, Term, prefix, prune, summation

__version__ = "0.1.0"

__all__ = [
    "A_CC_EQ",
    "A_CC_PRE",
    "A_CS",
    "A_CS_EQ",
    "AXIOM_SETS",
    "AxiomSchema",
    "AxiomSet",
    "SideCondition",
    "apply",
    "load_axiom_set",
    "match_at",
    "parse_axiom_file",
    "EnumerationBounds",
    "SweepReport",
    "Violation",
    "WitnessReport",
    "coarsest_precong_sweep",
    "completeness_sweep",
    "degeneration_sweep",
    "enumerate_terms",
    "hierarchy_sweep",
    "nonaxiomatizability_witness",
    "soundness_sweep",
    "Proof",
    "ProofCheck",
    "ProofChecker",
    "Step",
    "verify_proof",
    "BivariantAlphabetError",
    "prove_cc_equiv",
    "prove_cc_preorder",
    "prove_conf_equiv",
    "prove_conf_precong",
    "prover_for",
    "Checker",
    "Judgement",
    "RelationKind",
    "bisimilar",
    "cc_equiv",
    "cc_simulates",
    "check",
    "conf_equiv",
    "conf_precong",
    "conf_simulates",
    "holds",
    "inverse_simulates",
    "plain_simulates",
    "ready_conf_simulates",
    "ready_simulates",
    "ParseError",
    "format_term",
    "load_file",
    "parse",
    "parse_file",
    "NIL",
    "Action",
    "Alphabet",
    "AlphabetError",
    "Polarity",
    "Term",
    "prefix",
    "prune",
    "summation",
]
