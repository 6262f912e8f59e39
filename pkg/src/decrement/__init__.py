"""Gradual belief contraction over ranked epistemic states.

A state is a total preorder over the worlds of a propositional signature;
its beliefs are the sentences true in every bottom-layer world.  The
package provides one-step decrement operators (type-1, type-2) that lower
counter-worlds gradually, an instant contraction operator, and a checker
that verifies belief-change postulates exhaustively on small signatures.
"""

from decrement._kernel import BACKEND as kernel_backend
from decrement.checker import (
    ALL_POSTULATES,
    CheckReport,
    ConformanceMatrix,
    DomainTooLargeError,
    EXHAUSTIVE,
    Exhaustive,
    PostulateId,
    Sample,
    check_postulate,
    conformance_matrix,
    replay_counterexample,
    successor_satisfiability,
    verify_representation,
)
from decrement.logic import (
    BOTTOM,
    Formula,
    FormulaError,
    FormulaSyntaxError,
    Signature,
    TOP,
    UnknownAtomError,
    entails,
    equiv_wrt,
    equivalent,
    format_formula,
    formula_from_worldset,
    models,
    negated_world,
    parse_formula,
)
from decrement.operators import (
    AchieveResult,
    HesitanceViolationError,
    NotPreorderError,
    OperatorKind,
    achieve,
    frontal,
    giveup_leq,
    giveup_ll,
    giveup_lt,
    induced_order,
    iterate,
    step,
)
from decrement.preorder import (
    TotalPreorder,
    UniverseTooLargeError,
    compress,
    direct_successor,
    enumerate_preorders,
    equiv,
    from_layers,
    leq,
    lt,
    min_of,
    to_layers,
)
from decrement.state import (
    EpistemicState,
    StateFormatError,
    bel_equiv_wrt,
    belief_models,
    believes,
    state_from_doc,
    state_to_doc,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_POSTULATES",
    "AchieveResult",
    "BOTTOM",
    "CheckReport",
    "ConformanceMatrix",
    "DomainTooLargeError",
    "EXHAUSTIVE",
    "EpistemicState",
    "Exhaustive",
    "Formula",
    "FormulaError",
    "FormulaSyntaxError",
    "HesitanceViolationError",
    "NotPreorderError",
    "OperatorKind",
    "PostulateId",
    "Sample",
    "Signature",
    "StateFormatError",
    "TOP",
    "TotalPreorder",
    "UniverseTooLargeError",
    "UnknownAtomError",
    "achieve",
    "bel_equiv_wrt",
    "belief_models",
    "believes",
    "check_postulate",
    "compress",
    "conformance_matrix",
    "direct_successor",
    "entails",
    "enumerate_preorders",
    "equiv",
    "equiv_wrt",
    "equivalent",
    "format_formula",
    "formula_from_worldset",
    "from_layers",
    "frontal",
    "giveup_leq",
    "giveup_ll",
    "giveup_lt",
    "induced_order",
    "iterate",
    "kernel_backend",
    "leq",
    "lt",
    "min_of",
    "models",
    "negated_world",
    "parse_formula",
    "replay_counterexample",
    "state_from_doc",
    "state_to_doc",
    "step",
    "successor_satisfiability",
    "to_layers",
    "verify_representation",
]
