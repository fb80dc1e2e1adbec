"""Combinatorial test generators, transformers and provers for
propositional intuitionistic logic.

The package follows one pipeline: exhaustive and random generators
produce formulas (some known provable via the formulas-as-types bridge),
transformers rewrite them into equiprovable forms, a family of
contraction-free provers decides them, and the harness cross-checks
everything against a loop-checking gold-standard prover.
"""

from .formulas import (
    And,
    Atom,
    FALSE,
    Falsum,
    FragmentError,
    HAtom,
    Iff,
    Imp,
    NestedHorn,
    Not,
    Or,
    ParseError,
    Rule,
    atom,
    canonical_numbering,
    formula_size,
    hatom,
    horn_size,
    negation_normalize,
    parse_formula,
    parse_horn,
    print_formula,
    print_horn,
    rule,
    term_order,
)
from .provers import (
    PROVERS,
    StepBudgetExceeded,
    Verdict,
    prove_full_ipc,
    prove_headfirst,
    prove_horn,
    prove_hudelmaier,
    prove_ljt,
    prove_merged,
    prove_oracle,
    prove_with_term,
)
from .transforms import (
    FreshAtomAllocator,
    from_disj_bicond,
    from_horn,
    is_mints_clause,
    mints,
    to_disj_bicond,
    to_horn,
    to_nested_horn_list,
)

__version__ = "0.1.0"
