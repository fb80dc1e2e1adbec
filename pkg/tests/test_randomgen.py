from collections import Counter

import pytest

from ipckit.enumerate import gen_set_partitions, is_rgs
from ipckit.formulas import atom, formula_size, print_formula
from ipckit.lambda_terms import lambda_size, type_check
from ipckit.provers import prove_ljt
from ipckit.randomgen import (
    BigCountTable,
    RetryBudgetExceeded,
    _partition_by_blocks,
    make_rng,
    random_impl_formula,
    random_set_partition,
    random_sk_tautology,
    random_typed_nf,
    remy_sk_tree,
    remy_tree,
)


def test_big_count_table_values():
    t = BigCountTable()
    assert [t.bell(n) for n in range(1, 6)] == [1, 2, 5, 15, 52]
    assert t.stirling(4, 2) == 7
    # recurrence spot check
    assert t.stirling(6, 3) == t.stirling(5, 2) + 3 * t.stirling(5, 3)
    # completions against brute force: D(m, b) counts rgs suffixes
    assert t.completions(0, 3) == 1
    assert t.completions(2, 1) == 1 * t.completions(1, 1) + t.completions(1, 2)
    assert t.completions(3, 0) == t.bell(3)


def test_remy_single_leaf():
    assert remy_tree(0, make_rng(0)) == atom(0)


def test_remy_shapes_at_n3_uniform_smoke():
    rng = make_rng(42)
    counts = Counter(print_formula(remy_tree(3, rng)) for _ in range(20000))
    assert len(counts) == 5
    for v in counts.values():
        assert abs(v / 20000 - 0.2) < 0.02


def test_remy_n6_paper_shape_reachable():
    rng = make_rng(0)
    target = "(((0->1)->2->3)->4->5)->6"
    assert any(print_formula(remy_tree(6, rng)) == target for _ in range(10000))


def test_random_partition_trivial_and_valid():
    rng = make_rng(1)
    assert random_set_partition(1, rng) == [0]
    for n in (2, 5, 9, 40):
        for _ in range(50):
            assert is_rgs(random_set_partition(n, rng))


def test_random_partition_uniform_smoke():
    rng = make_rng(7)
    draws = 30000
    counts = Counter(tuple(random_set_partition(4, rng)) for _ in range(draws))
    assert len(counts) == 15
    for v in counts.values():
        assert abs(v / draws - 1 / 15) < 0.012


def test_block_sampler_agrees_with_sequential_distribution():
    # the two internal methods target the same uniform distribution
    rng = make_rng(3)
    table = BigCountTable()
    draws = 30000
    counts = Counter(tuple(_partition_by_blocks(4, rng, table))
                     for _ in range(draws))
    assert len(counts) == 15
    for v in counts.values():
        assert abs(v / draws - 1 / 15) < 0.012
    assert set(counts) == {tuple(p) for p in gen_set_partitions(4)}


def test_paper_partition_sample_reachable():
    rng = make_rng(1)
    seen = set()
    for _ in range(20000):
        seen.add("".join(map(str, random_set_partition(7, rng))))
    assert "0121123" in seen


def test_random_impl_formula_basics():
    rng = make_rng(0)
    assert random_impl_formula(0, rng) == atom(0)
    f = random_impl_formula(1000, make_rng(3))
    assert formula_size(f) == 1000


def test_random_impl_formula_uniform_over_pairs():
    # n=2: 2 shapes x Bell(3)=5 partitions = 10 equally likely formulas
    rng = make_rng(5)
    draws = 40000
    counts = Counter(print_formula(random_impl_formula(2, rng))
                     for _ in range(draws))
    assert len(counts) == 10
    for v in counts.values():
        assert abs(v / draws - 0.1) < 0.012


def test_determinism_same_seed_same_stream():
    for maker in (lambda r: print_formula(random_impl_formula(7, r)),
                  lambda r: "".join(map(str, random_set_partition(9, r))),
                  lambda r: print_formula(remy_tree(5, r))):
        a = [maker(make_rng(99)) for _ in range(3)]
        b = [maker(make_rng(99)) for _ in range(3)]
        assert a == b


def test_remy_sk_tree_sizes():
    rng = make_rng(2)
    t = remy_sk_tree(5, rng)
    from ipckit.lambda_terms import sk_size

    assert sk_size(t) == 5


def test_random_sk_tautology_provable():
    rng = make_rng(11)
    for _ in range(5):
        f = random_sk_tautology(8, 3, rng)
        assert formula_size(f) >= 3
        assert prove_ljt(f).proved


def test_random_sk_tautology_retry_budget():
    rng = make_rng(0)
    with pytest.raises(RetryBudgetExceeded):
        random_sk_tautology(1, 100, rng, retries=50)


def test_random_typed_nf_window_and_types():
    rng = make_rng(13)
    term, ty = random_typed_nf(1, rng)
    assert lambda_size(term) == 1 and print_formula(ty) == "0->0"
    for target in (20, 60):
        term, ty = random_typed_nf(target, rng)
        assert 0.9 * target <= lambda_size(term) <= 1.1 * target
        assert type_check(term, ty)


def test_random_typed_nf_retry_budget():
    with pytest.raises(RetryBudgetExceeded):
        random_typed_nf(50, make_rng(1), retries=0)
