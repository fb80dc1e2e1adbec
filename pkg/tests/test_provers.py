import pytest

from ipckit.enumerate import (
    gen_full_formulas,
    gen_impl_formulas,
    gen_impl_tautologies,
)
from ipckit.formulas import (
    FragmentError,
    formula_size,
    parse_formula,
    parse_horn,
    subformulas,
)
from ipckit.lambda_terms import print_term, type_check
from ipckit.provers import (
    IMPLICATIONAL_PROVERS,
    PROVERS,
    StepBudgetExceeded,
    prove_full_ipc,
    prove_horn,
    prove_hudelmaier,
    prove_ljt,
    prove_oracle,
    prove_with_term,
)

S_TYPE = parse_formula("(0->1->2)->(0->1)->0->2")
PEIRCE = parse_formula("((0->1)->0)->0")


@pytest.mark.parametrize("name", sorted(PROVERS))
def test_s_type_proved_everywhere(name):
    assert PROVERS[name](S_TYPE).proved


@pytest.mark.parametrize("name", sorted(PROVERS))
def test_peirce_rejected_everywhere(name):
    assert not PROVERS[name](PEIRCE).proved


@pytest.mark.parametrize("name", sorted(PROVERS))
def test_simple_verdicts(name):
    prover = PROVERS[name]
    assert prover(parse_formula("0->0")).proved
    assert not prover(parse_formula("0->1")).proved
    assert prover(parse_formula("(((0->0)->1)->1)")).proved


def test_implicational_input_required():
    for name in ("ljt", "merged", "horn", "headfirst", "term", "hudelmaier"):
        with pytest.raises(FragmentError):
            PROVERS[name](parse_formula("0&1"))


def test_pairwise_agreement_small_sizes():
    for n in range(5):
        for f in gen_impl_formulas(n):
            verdicts = {name: PROVERS[name](f).proved
                        for name in IMPLICATIONAL_PROVERS}
            assert len(set(verdicts.values())) == 1, (f, verdicts)


def test_tautologies_proved_by_all_small():
    for n in range(1, 7):
        for f in gen_impl_tautologies(n):
            for name in IMPLICATIONAL_PROVERS:
                assert PROVERS[name](f).proved, (name, f)


def test_proof_terms_for_s_k_i():
    got = prove_with_term(S_TYPE)
    assert print_term(got.proof_term) == "\\a.\\b.\\c.a c (b c)"
    got = prove_with_term(parse_formula("0->1->0"))
    assert print_term(got.proof_term) == "\\a.\\b.a"
    got = prove_with_term(parse_formula("0->0"))
    assert print_term(got.proof_term) == "\\a.a"


def test_proof_terms_type_check_small():
    for n in range(6):
        for f in gen_impl_formulas(n):
            v = prove_with_term(f)
            if v.proved:
                assert type_check(v.proof_term, f), f
            else:
                assert v.proof_term is None


def test_prove_horn_accepts_clauses_directly():
    assert prove_horn(parse_horn("0:-[0]")).proved
    assert not prove_horn(parse_horn("0")).proved
    assert prove_horn(parse_horn("0:-[(0:-[(0:-[0])])]")).proved


def test_horn_duplicated_heads_atomic():
    for n in range(6):
        for f in gen_impl_formulas(n):
            v = prove_horn(f)
            assert v.violations == 0


def test_hudelmaier_context_size_bound():
    for n in range(6):
        for f in gen_impl_formulas(n):
            v = prove_hudelmaier(f)
            assert v.violations == 0
    v = prove_hudelmaier(S_TYPE)
    assert v.max_context_size <= formula_size(parse_formula("0->1->2")) + 2


def test_full_ipc_examples():
    assert not prove_full_ipc(parse_formula("0 v (0->false)")).proved
    assert prove_full_ipc(
        parse_formula("((0 v 1)->2) <-> ((0->2)&(1->2))")).proved
    assert prove_full_ipc(parse_formula("(0&1)->0")).proved
    assert prove_full_ipc(parse_formula("~0 v ~~0")).proved is False
    assert prove_full_ipc(parse_formula("~~(0 v ~0)")).proved


def test_oracle_examples():
    assert prove_oracle(parse_formula("0->0")).proved
    assert not prove_oracle(PEIRCE).proved
    assert not prove_oracle(parse_formula("((0->1)->1)->((1->0)->0)")).proved
    assert prove_oracle(parse_formula("false->0")).proved


def test_full_ipc_agrees_with_oracle_small():
    for n in range(4):
        for f in gen_full_formulas(n, canonical=True):
            assert prove_full_ipc(f).proved == prove_oracle(f).proved, f


def test_oracle_budget_error_is_distinct():
    with pytest.raises(StepBudgetExceeded):
        prove_oracle(parse_formula("((0->1)->0)->0"), budget=3)


def test_step_budgets_never_trigger_on_sweep():
    budget = 10 ** 7
    for n in range(5):
        for f in gen_impl_formulas(n):
            for name in ("ljt", "merged", "horn", "headfirst", "term",
                         "hudelmaier", "fullipc"):
                PROVERS[name](f, budget)


def test_verdict_stats_populated():
    v = prove_ljt(S_TYPE)
    assert v.nodes > 0
