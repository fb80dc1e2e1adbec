"""Exhaustive enumeration of formulas, skeletons and labelings by size.

Streams are deterministic: depth-first, smallest-constructor-first, with
the first subterm's size ascending.  Only set equality and counts are
contractual; the order is a stability guarantee of this module.
"""

from dataclasses import dataclass, field

from .formulas import (
    And,
    FALSE,
    HAtom,
    Iff,
    Imp,
    Not,
    Or,
    Rule,
    atom,
    formula_order,
    hatom,
    relabel,
    relabel_horn,
    rule,
    term_order,
)
from .lambda_terms import (
    App,
    Arrow,
    BindingStore,
    Lam,
    MetaVar,
    VarRef,
    type_to_formula,
    unify_occurs,
)


# ---------------------------------------------------------------------------
# set partitions as restricted growth strings

def gen_set_partitions(n):
    """All restricted-growth strings of length n, lexicographic order.
    Exactly Bell(n) of them."""
    if n < 1:
        raise ValueError("need n >= 1")
    rgs = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(rgs)
            return
        for v in range(top + 2):
            rgs[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


def is_rgs(seq):
    if not seq or seq[0] != 0:
        return False
    top = 0
    for v in seq[1:]:
        if v > top + 1:
            return False
        top = max(top, v)
    return True


# ---------------------------------------------------------------------------
# implicational skeletons and formulas

def gen_impl_skeletons(n):
    """All binary implication trees with n internal nodes; leaves are
    atoms numbered by traversal position.  Catalan(n) skeletons."""

    def rec(size, nxt):
        if size == 0:
            yield atom(nxt), nxt + 1
            return
        for lsize in range(size):
            for left, mid in rec(lsize, nxt):
                for right, end in rec(size - 1 - lsize, mid):
                    yield Imp(left, right), end

    for skel, _ in rec(n, 0):
        yield skel


def gen_impl_formulas(n):
    """Every implicational formula of size n up to canonical numbering:
    skeletons crossed with set partitions of the n+1 leaves."""
    for skel in gen_impl_skeletons(n):
        for labels in gen_set_partitions(n + 1):
            yield relabel(skel, labels)


# ---------------------------------------------------------------------------
# full-language formulas

_BIN_OPS = (Imp, And, Or, Iff)


def _full_shapes(size, nxt):
    # yields (formula with positional leaves, next leaf position)
    if size == 0:
        yield atom(nxt), nxt + 1
        return
    for lsize in range(size):
        for left, mid in _full_shapes(lsize, nxt):
            for right, end in _full_shapes(size - 1 - lsize, mid):
                for op in _BIN_OPS:
                    yield op(left, right), end
    for arg, end in _full_shapes(size - 1, nxt):
        yield Not(arg), end


def _neg_depth_ok(f, limit=3):
    t = type(f)
    if t is Not:
        run, g = 0, f
        while type(g) is Not:
            run += 1
            g = g.arg
        return run <= limit and _neg_depth_ok(g, limit)
    if t in _BIN_OPS:
        return _neg_depth_ok(f.lhs, limit) and _neg_depth_ok(f.rhs, limit)
    return True


def _chains_canonical(f):
    # right-nested &/v chains with strictly increasing, duplicate-free
    # operands under formula_order
    t = type(f)
    if t in (And, Or):
        if type(f.lhs) is t:
            return False
        nxt = f.rhs.lhs if type(f.rhs) is t else f.rhs
        if formula_order(f.lhs, nxt) >= 0:
            return False
        return _chains_canonical(f.lhs) and _chains_canonical(f.rhs)
    if t in (Imp, Iff):
        return _chains_canonical(f.lhs) and _chains_canonical(f.rhs)
    if t is Not:
        return _chains_canonical(f.arg)
    return True


def gen_full_formulas(n, canonical=False):
    """All full-language formulas of size n (internal-node count; ~ is a
    unary internal node).  With canonical=True, &/v chains are right
    nested with sorted duplicate-free operands and iterated negation is
    restricted to at most 3."""
    for shape, leaves in _full_shapes(n, 0):
        for labels in gen_set_partitions(leaves):
            f = relabel(shape, labels)
            if canonical and not (_chains_canonical(f) and _neg_depth_ok(f)):
                continue
            yield f


def gen_disjunction_free(n):
    """Full formulas of size n containing no disjunction."""
    for f in gen_full_formulas(n):
        if not _has_or(f):
            yield f


def _has_or(f):
    t = type(f)
    if t is Or:
        return True
    if t in (Imp, And, Iff):
        return _has_or(f.lhs) or _has_or(f.rhs)
    if t is Not:
        return _has_or(f.arg)
    return False


# ---------------------------------------------------------------------------
# nested Horn clause skeletons

def gen_horn_skeletons(n):
    """All nested-clause trees with n body positions; leaves numbered by
    traversal position (head first).  Catalan(n) skeletons."""

    def tree(size, nxt):
        if size == 0:
            yield hatom(atom(nxt)), nxt + 1
            return
        head = atom(nxt)
        for body, end in bodies(size, nxt + 1):
            yield Rule(head, tuple(body)), end

    def bodies(budget, nxt):
        # non-empty sequence of elements; each element costs 1 + its size
        for esize in range(budget):
            for elem, mid in tree(esize, nxt):
                rest = budget - 1 - esize
                if rest == 0:
                    yield [elem], mid
                else:
                    for more, end in bodies(rest, mid):
                        yield [elem] + more, end

    for skel, _ in tree(n, 0):
        yield skel


def _sorted_trees(size, labels, pos):
    # labeled nested-clause trees consuming labels[pos:], with every body
    # strictly increasing under term_order
    if size == 0:
        yield hatom(atom(labels[pos])), pos + 1
        return
    head = atom(labels[pos])
    for body, end in _sorted_bodies(size, labels, pos + 1, None):
        yield Rule(head, tuple(body)), end


def _sorted_bodies(budget, labels, pos, prev):
    for esize in range(budget):
        for elem, mid in _sorted_trees(esize, labels, pos):
            if prev is not None and term_order(prev, elem) >= 0:
                continue
            rest = budget - 1 - esize
            if rest == 0:
                yield [elem], mid
            else:
                for more, end in _sorted_bodies(rest, labels, mid, elem):
                    yield [elem] + more, end


def gen_sorted_horn(n, labeled=False):
    """Nested clauses with sorted, duplicate-free bodies.

    Skeleton mode streams position-labeled trees (counts match the
    sorted-clause sequence); labeled mode streams every canonical leaf
    labeling whose fully labeled tree is still sorted."""
    if not labeled:
        positions = list(range(n + 1))
        for skel, _ in _sorted_trees(n, positions, 0):
            yield skel
        return
    for labels in gen_set_partitions(n + 1):
        for t, _ in _sorted_trees(n, labels, 0):
            yield t


def gen_sorted_horn_with_labels(n, labels):
    """Sorted labeled trees of size n for one fixed leaf labeling."""
    for t, _ in _sorted_trees(n, list(labels), 0):
        yield t


# ---------------------------------------------------------------------------
# uninhabitable skeletons and labelings (need a prover as subroutine)

def gen_uninhabitable_trees(n, prover=None):
    """Sorted skeletons such that no leaf labeling is provable."""
    if prover is None:
        from .provers import horn_provable as prover
    for skel in gen_sorted_horn(n):
        if not any(
            prover(relabel_horn(skel, labels))
            for labels in gen_set_partitions(n + 1)
        ):
            yield skel


def gen_uninhabitable_labelings(n, prover=None):
    """Canonical labelings of n leaves such that no sorted tree of size
    n-1 is provable under them."""
    if n < 1:
        raise ValueError("need n >= 1")
    if prover is None:
        from .provers import horn_provable as prover
    for labels in gen_set_partitions(n):
        if not any(prover(t) for t in gen_sorted_horn_with_labels(n - 1, labels)):
            yield labels


# ---------------------------------------------------------------------------
# typable closed normal forms of a given size

def _nf_pairs(ty, ctx, depth, budget, store):
    # yields (term, remaining budget); ctx holds (binder_depth, type)
    if budget >= 1:
        mark = store.mark()
        p, q = MetaVar(), MetaVar()
        if unify_occurs(ty, Arrow(p, q), store):
            for body, rem in _nf_pairs(q, [(depth, p)] + ctx, depth + 1, budget - 1, store):
                yield Lam(body), rem
        store.undo(mark)
    yield from _nf_no_left_lambda(ty, ctx, depth, budget, store)


def _nf_no_left_lambda(ty, ctx, depth, budget, store):
    for bdepth, vty in ctx:
        mark = store.mark()
        if unify_occurs(ty, vty, store):
            yield VarRef(depth - 1 - bdepth), budget
        store.undo(mark)
    if budget >= 2:
        p = MetaVar()
        for fun, rem1 in _nf_no_left_lambda(Arrow(p, ty), ctx, depth, budget - 2, store):
            for arg, rem2 in _nf_pairs(p, ctx, depth, rem1, store):
                yield App(fun, arg), rem2


def gen_typed_nf(n):
    """Every closed simply-typable beta-normal form of size n paired with
    its canonical principal type."""
    store = BindingStore()
    top = MetaVar()
    for term, rem in _nf_pairs(top, [], 0, n, store):
        if rem == 0:
            yield term, type_to_formula(top)


def _taut_stream(ty, ctx, budget, store):
    if budget >= 1:
        mark = store.mark()
        p, q = MetaVar(), MetaVar()
        if unify_occurs(ty, Arrow(p, q), store):
            yield from _taut_stream(q, [p] + ctx, budget - 1, store)
        store.undo(mark)
    yield from _taut_no_left_lambda(ty, ctx, budget, store)


def _taut_no_left_lambda(ty, ctx, budget, store):
    for vty in ctx:
        mark = store.mark()
        if unify_occurs(ty, vty, store):
            yield budget
        store.undo(mark)
    if budget >= 2:
        p = MetaVar()
        for rem1 in _taut_no_left_lambda(Arrow(p, ty), ctx, budget - 2, store):
            yield from _taut_stream(p, ctx, rem1, store)


def gen_impl_tautologies(n):
    """The principal types of gen_typed_nf(n), in the same multiplicity,
    without materializing the terms."""
    store = BindingStore()
    top = MetaVar()
    for rem in _taut_stream(top, [], n, store):
        if rem == 0:
            yield type_to_formula(top)


# ---------------------------------------------------------------------------
# counting harness

@dataclass
class CountSequence:
    """Exact counts per size for one enumeration family."""

    family: str
    start: int
    values: list = field(default_factory=list)
    truncated: bool = False

    def pairs(self):
        return [(self.start + i, v) for i, v in enumerate(self.values)]


def _ilen(it):
    n = 0
    for _ in it:
        n += 1
    return n


def horn3_depth(h):
    """Clause depth as the depth-3 families count it: descending into a
    body's first element costs a level while the remaining elements stay
    on the rule's own level."""
    if type(h) is HAtom:
        return 0
    d = 1 + horn3_depth(h.body[0])
    for b in h.body[1:]:
        d = max(d, horn3_depth(b))
    return d


FAMILIES = {}


def _family(tag, start=0):
    def deco(fn):
        FAMILIES[tag] = (fn, start)
        return fn

    return deco


@_family("impl-skeletons")
def _c_skel(n):
    return _ilen(gen_impl_skeletons(n))


@_family("partitions", start=1)
def _c_part(n):
    return _ilen(gen_set_partitions(n))


@_family("impl-all")
def _c_impl(n):
    return _ilen(gen_impl_formulas(n))


@_family("impl-provable")
def _c_provable(n):
    from .provers import oracle_provable

    return sum(1 for f in gen_impl_formulas(n) if oracle_provable(f))


@_family("impl-taut")
def _c_taut(n):
    return _ilen(gen_impl_tautologies(n))


@_family("horn")
def _c_horn(n):
    return _ilen(gen_horn_skeletons(n))


@_family("sorted-horn")
def _c_shorn(n):
    return _ilen(gen_sorted_horn(n))


@_family("horn3")
def _c_horn3(n):
    return sum(1 for h in gen_horn_skeletons(n) if horn3_depth(h) <= 3)


@_family("sorted-horn3")
def _c_shorn3(n):
    return sum(1 for h in gen_sorted_horn(n) if horn3_depth(h) <= 3)


@_family("uninhab-tree")
def _c_utree(n):
    return _ilen(gen_uninhabitable_trees(n))


@_family("uninhab-vars")
def _c_uvars(n):
    if n == 0:
        return 0  # no labelings of zero leaves
    return _ilen(gen_uninhabitable_labelings(n))


@_family("full-all")
def _c_full(n):
    return _ilen(gen_full_formulas(n))


@_family("full-canonical")
def _c_fullc(n):
    return _ilen(gen_full_formulas(n, canonical=True))


def count_family(family, max_n, budget=None):
    """Exact counts for sizes start..max_n by draining the streams.

    `budget` caps the total number of enumerated objects; exceeding it
    yields a truncated sequence with the flag set."""
    if family not in FAMILIES:
        raise ValueError("unknown family %r" % family)
    fn, start = FAMILIES[family]
    seq = CountSequence(family, start)
    spent = 0
    for n in range(start, max_n + 1):
        v = fn(n)
        spent += v
        if budget is not None and spent > budget:
            seq.truncated = True
            break
        seq.values.append(v)
    return seq
