import pytest

from ipckit.enumerate import (
    gen_disjunction_free,
    gen_full_formulas,
    gen_impl_formulas,
)
from ipckit.formulas import (
    FragmentError,
    Iff,
    Or,
    atom,
    formula_size,
    parse_formula,
    parse_horn,
    print_formula,
    print_horn,
    spine_parts,
)
from ipckit.provers import oracle_provable
from ipckit.transforms import (
    FreshAtomAllocator,
    from_disj_bicond,
    from_horn,
    is_mints_clause,
    mints,
    to_disj_bicond,
    to_horn,
    to_nested_horn_list,
)


def test_to_horn_paper_example():
    f = parse_formula("(0->1->2->3->4)->(0->1->2)->0->2->3")
    assert print_horn(to_horn(f)) == "3:-[(4:-[0, 1, 2, 3]), (2:-[0, 1]), 0, 2]"


def test_to_horn_atom_and_errors():
    assert to_horn(atom(0)) == parse_horn("0")
    with pytest.raises(FragmentError):
        to_horn(parse_formula("0&1"))


def test_horn_round_trip_exhaustive():
    for n in range(7):
        for f in gen_impl_formulas(n):
            assert from_horn(to_horn(f)) == f


def test_nested_horn_paper_example():
    f = parse_formula("a&b&(c&d->e)<->f&g")
    got = [print_horn(c) for c in to_nested_horn_list(f)]
    assert got == [
        "5:-[0, 1, (4:-[2, 3])]",
        "6:-[0, 1, (4:-[2, 3])]",
        "0:-[5, 6]",
        "1:-[5, 6]",
        "4:-[2, 3, 5, 6]",
    ]


def test_nested_horn_atom_and_or_rejection():
    assert to_nested_horn_list(atom(3)) == [parse_horn("3")]
    with pytest.raises(FragmentError):
        to_nested_horn_list(parse_formula("0 v 1"))


def test_nested_horn_heads_atomic():
    def heads_atomic(h):
        if not hasattr(h, "body"):
            return True
        return formula_size(h.head) == 0 and all(heads_atomic(b) for b in h.body)

    for n in range(4):
        for f in gen_disjunction_free(n):
            for c in to_nested_horn_list(f):
                assert heads_atomic(c)


def test_nested_horn_equiprovability():
    for n in range(4):
        for f in gen_disjunction_free(n):
            clauses = to_nested_horn_list(f)
            all_provable = all(oracle_provable(from_horn(c)) for c in clauses)
            assert oracle_provable(f) == all_provable


def test_mints_trivial_and_shapes():
    assert mints(atom(0)) == atom(0)
    m = mints(parse_formula("0->1->2->3->0"))
    clauses, goal = spine_parts(m)
    assert formula_size(goal) == 0
    assert len(clauses) == 8
    assert all(is_mints_clause(c) for c in clauses)


def test_mints_clause_checker():
    assert is_mints_clause(parse_formula("0"))
    assert is_mints_clause(parse_formula("0->1"))
    assert is_mints_clause(parse_formula("(0->1)->2"))
    assert is_mints_clause(parse_formula("0->1->2"))
    assert is_mints_clause(parse_formula("0->1 v 2"))
    assert is_mints_clause(parse_formula("0->false"))
    assert not is_mints_clause(parse_formula("(0->1)->2->3"))
    assert not is_mints_clause(parse_formula("0&1"))
    assert not is_mints_clause(parse_formula("((0->1)->2)->3"))


def test_mints_output_is_flat_everywhere():
    for n in range(4):
        for f in gen_full_formulas(n):
            clauses, goal = spine_parts(mints(f))
            assert formula_size(goal) == 0
            assert all(is_mints_clause(c) for c in clauses)


def test_mints_linear_size():
    # measured constant across the sweep: output stays within c * input
    worst = 0
    for n in range(1, 6):
        for f in gen_impl_formulas(n):
            ratio = formula_size(mints(f)) / max(formula_size(f), 1)
            worst = max(worst, ratio)
    assert worst <= 12


def test_mints_equiprovable_small():
    for n in range(4):
        for f in gen_impl_formulas(n):
            assert oracle_provable(f) == oracle_provable(mints(f))


def test_mints_fresh_atoms_above_input():
    f = parse_formula("0->7->0")
    clauses, _ = spine_parts(mints(f))
    from ipckit.formulas import atoms_of

    fresh = atoms_of(mints(f)) - atoms_of(f)
    assert fresh and min(fresh) > 7


def test_fresh_atom_allocator():
    alloc = FreshAtomAllocator(parse_formula("0->5"))
    assert alloc.fresh() == atom(6)
    assert alloc.fresh() == atom(7)


def test_disj_bicond_rules():
    assert (to_disj_bicond(parse_formula("0->1"))
            == Iff(Or(atom(0), atom(1)), atom(1)))
    assert (to_disj_bicond(parse_formula("0&1"))
            == Iff(Or(atom(0), atom(1)), Iff(atom(0), atom(1))))
    assert to_disj_bicond(atom(0)) == atom(0)


def test_disj_bicond_output_base():
    from ipckit.formulas import And, Imp

    def no_imp_and(f):
        if type(f) in (Imp, And):
            return False
        if hasattr(f, "lhs"):
            return no_imp_and(f.lhs) and no_imp_and(f.rhs)
        if hasattr(f, "arg"):
            return no_imp_and(f.arg)
        return True

    for n in range(4):
        for f in gen_full_formulas(n):
            assert no_imp_and(to_disj_bicond(f))


def test_disj_bicond_round_trip_on_bicond_free():
    def has_iff(f):
        if type(f) is Iff:
            return True
        if hasattr(f, "lhs"):
            return has_iff(f.lhs) or has_iff(f.rhs)
        if hasattr(f, "arg"):
            return has_iff(f.arg)
        return False

    for n in range(5):
        for f in gen_full_formulas(n):
            if not has_iff(f):
                assert from_disj_bicond(to_disj_bicond(f)) == f


def test_disj_bicond_collision_boundary():
    # the {v,<->} base cannot represent this distinction: an input already
    # of the image shape collides with the image of an implication, so the
    # reverse rewrite legitimately simplifies it
    f = Iff(Or(atom(0), atom(1)), atom(1))
    g = parse_formula("0->1")
    assert to_disj_bicond(f) == to_disj_bicond(g) == f
    assert from_disj_bicond(to_disj_bicond(f)) == g
    assert oracle_provable(from_disj_bicond(f)) == oracle_provable(f)


def test_disj_bicond_reverse_preserves_provability():
    for n in range(4):
        for f in gen_full_formulas(n):
            assert (oracle_provable(from_disj_bicond(to_disj_bicond(f)))
                    == oracle_provable(f))
