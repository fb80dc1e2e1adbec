"""Equiprovability-preserving formula transformations.

Every transform here is validated against the oracle prover by the test
suite: a formula and its image are provable for exactly the same inputs.
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
    Not,
    Or,
    Rule,
    atom,
    hatom,
    is_implicational,
    max_atom,
    negation_normalize,
    rule,
    spine_parts,
)


class FreshAtomAllocator:
    """Hands out atom indices strictly above every input atom."""

    def __init__(self, *formulas):
        self.next = max((max_atom(f) for f in formulas), default=-1) + 1

    def fresh(self):
        a = atom(self.next)
        self.next += 1
        return a


# ---------------------------------------------------------------------------
# implicational <-> nested Horn

def to_horn(f):
    """Implicational formula to nested clause: the head is the final atom
    of the implication spine, the body its converted antecedents."""
    if not is_implicational(f):
        raise FragmentError("to_horn accepts only implicational formulas")
    return _to_horn(f)


def _to_horn(f):
    if type(f) is Atom:
        return hatom(f)
    ants, head = spine_parts(f)
    return Rule(head, tuple(_to_horn(a) for a in ants))


def from_horn(h):
    """Inverse of to_horn on any nested clause."""
    if type(h) is HAtom:
        return h.leaf
    out = h.head
    for b in reversed(h.body):
        out = Imp(from_horn(b), out)
    return out


# ---------------------------------------------------------------------------
# disjunction-free formulas to lists of nested clauses

def to_nested_horn_list(f):
    """Rewrite a disjunction-free formula into a list of nested clauses
    whose conjunction is equiprovable with it: expand <->, convert
    implication spines, split conjunctive heads, reduce compound heads,
    flatten conjunctions in bodies, trim empty bodies."""
    if _contains_or(f):
        raise FragmentError("to_nested_horn_list requires disjunction-free input")
    g = _expand_iff(negation_normalize(f))
    return _conv(g)


def _contains_or(f):
    t = type(f)
    if t is Or:
        return True
    if t in (Imp, And, Iff):
        return _contains_or(f.lhs) or _contains_or(f.rhs)
    if t is Not:
        return _contains_or(f.arg)
    return False


def _expand_iff(f):
    t = type(f)
    if t in (Atom, Falsum):
        return f
    if t is Iff:
        a, b = _expand_iff(f.lhs), _expand_iff(f.rhs)
        return And(Imp(a, b), Imp(b, a))
    return t(_expand_iff(f.lhs), _expand_iff(f.rhs))


def _conv(f):
    # list of clauses equivalent to f (f ranges over atoms, false, ->, &)
    t = type(f)
    if t in (Atom, Falsum):
        return [hatom(f)]
    if t is And:
        return _conv(f.lhs) + _conv(f.rhs)
    ants, head = spine_parts(f)
    body = []
    for a in ants:
        body.extend(_body_items(a))
    return _clause_of(head, body)


def _body_items(f):
    t = type(f)
    if t in (Atom, Falsum):
        return [hatom(f)]
    if t is And:
        return _body_items(f.lhs) + _body_items(f.rhs)
    return list(_conv(f))


def _clause_of(head, body):
    t = type(head)
    if t in (Atom, Falsum):
        if not body:
            return [hatom(head)]
        return [Rule(head, tuple(body))]
    if t is And:
        return _clause_of(head.lhs, body) + _clause_of(head.rhs, body)
    # compound implicational head: (C->D :- Body) becomes (D :- C ++ Body)
    return _clause_of(head.rhs, _body_items(head.lhs) + body)


# ---------------------------------------------------------------------------
# Mints flattening

_MINTS_LEAF = (Atom, Falsum)


def is_mints_clause(f):
    """Shape check for the flat clause forms p, p->q, (p->q)->r,
    p->(q->r), p->(q v r) with p,q,r atomic or false."""

    def leaf(x):
        return type(x) in _MINTS_LEAF

    if leaf(f):
        return True
    if type(f) is not Imp:
        return False
    a, b = f.lhs, f.rhs
    if leaf(a):
        if leaf(b):
            return True
        if type(b) is Imp and leaf(b.lhs) and leaf(b.rhs):
            return True
        if type(b) is Or and leaf(b.lhs) and leaf(b.rhs):
            return True
        return False
    if type(a) is Imp and leaf(a.lhs) and leaf(a.rhs) and leaf(b):
        return True
    return False


def mints(f):
    """Flatten to a curried chain D1->...->Dk->g of defining clauses over
    fresh names for compound subformulas; equiprovable with f and linear
    in its size.  Negation and <-> are eliminated on the way in."""
    g = negation_normalize(f)
    alloc = FreshAtomAllocator(g)
    fwd, bwd = [], []
    names = {}

    def name_imp(a, b):
        key = Imp(a, b)
        n = names.get(key)
        if n is None:
            n = names[key] = alloc.fresh()
            fwd.append(Imp(n, Imp(a, b)))
            bwd.append(Imp(Imp(a, b), n))
        return n

    def name_of(x):
        t = type(x)
        if t in _MINTS_LEAF:
            return x
        n = names.get(x)
        if n is not None:
            return n
        if t is Imp:
            na, nb = name_of(x.lhs), name_of(x.rhs)
            return name_imp(na, nb)
        if t is And:
            na, nb = name_of(x.lhs), name_of(x.rhs)
            n = names[x] = alloc.fresh()
            fwd.append(Imp(n, na))
            fwd.append(Imp(n, nb))
            bwd.append(Imp(na, Imp(nb, n)))
            return n
        if t is Or:
            na, nb = name_of(x.lhs), name_of(x.rhs)
            n = names[x] = alloc.fresh()
            fwd.append(Imp(n, Or(na, nb)))
            bwd.append(Imp(na, n))
            bwd.append(Imp(nb, n))
            return n
        # biconditional: name both implications, then their conjunction
        na, nb = name_of(x.lhs), name_of(x.rhs)
        i1 = name_imp(na, nb)
        i2 = name_imp(nb, na)
        n = names[x] = alloc.fresh()
        fwd.append(Imp(n, i1))
        fwd.append(Imp(n, i2))
        bwd.append(Imp(i1, Imp(i2, n)))
        return n

    goal = name_of(g)
    out = goal
    for clause in reversed(fwd + bwd):
        out = Imp(clause, out)
    return out


# ---------------------------------------------------------------------------
# disjunction-biconditional-negation base

def to_disj_bicond(f):
    """Rewrite into the {v, <->, ~} base: A->B becomes (AvB)<->B and
    A&B becomes (AvB)<->(A<->B); other connectives map through."""
    t = type(f)
    if t in (Atom, Falsum):
        return f
    if t is Not:
        return Not(to_disj_bicond(f.arg))
    x, y = to_disj_bicond(f.lhs), to_disj_bicond(f.rhs)
    if t is Imp:
        return Iff(Or(x, y), y)
    if t is And:
        return Iff(Or(x, y), Iff(x, y))
    return t(x, y)


def from_disj_bicond(f):
    """Rewrite the two image patterns back; acts as a simplifier on
    arbitrary input and inverts to_disj_bicond on <->-free formulas."""
    t = type(f)
    if t in (Atom, Falsum):
        return f
    if t is Not:
        return Not(from_disj_bicond(f.arg))
    if t is Iff and type(f.lhs) is Or:
        x, y = f.lhs.lhs, f.lhs.rhs
        if f.rhs == y:
            return Imp(from_disj_bicond(x), from_disj_bicond(y))
        if type(f.rhs) is Iff and f.rhs.lhs == x and f.rhs.rhs == y:
            return And(from_disj_bicond(x), from_disj_bicond(y))
    return t(from_disj_bicond(f.lhs), from_disj_bicond(f.rhs))
