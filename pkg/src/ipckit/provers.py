"""Decision procedures for implicational and full propositional logic.

Implicational provers follow the contraction-free LJT/G4ip search: once a
reduction's guard succeeds the alternatives for that reduction are
dropped (the listings' cut), which keeps the search terminating without
loop checks.  The oracle implements plain LJ with an explicit
visited-sequent set and serves as the gold standard.
"""

from dataclasses import dataclass
from typing import Optional

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
    spine_head,
    subformulas,
)
from .lambda_terms import App, Lam, LambdaTerm, VarRef

DEFAULT_BUDGET = 50_000_000


class StepBudgetExceeded(RuntimeError):
    """A prover exceeded its step budget (should never happen for the
    terminating provers; reported distinctly for the oracle)."""


@dataclass
class Verdict:
    proved: bool
    proof_term: Optional[LambdaTerm] = None
    nodes: int = 0
    max_context_size: int = 0
    checks: int = 0
    violations: int = 0


class _Stats:
    __slots__ = ("nodes", "budget", "max_size", "bound", "checks", "violations")

    def __init__(self, budget):
        self.nodes = 0
        self.budget = budget
        self.max_size = 0
        self.bound = None
        self.checks = 0
        self.violations = 0

    def step(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise StepBudgetExceeded("step budget exceeded")

    def created(self, f):
        s = f.size
        if s > self.max_size:
            self.max_size = s
        self.checks += 1
        if self.bound is not None and s > self.bound:
            self.violations += 1


def _require_implicational(f):
    if not is_implicational(f):
        raise FragmentError("prover accepts only implicational formulas")


# ---------------------------------------------------------------------------
# lprove: literal translation of the four LJT rules

def _ljt(goal, ctx, st):
    st.step()
    if goal in ctx:
        return True
    if type(goal) is Imp:
        return _ljt(goal.rhs, [goal.lhs] + ctx, st)
    for i, f in enumerate(ctx):
        if type(f) is Imp:
            rest = ctx[:i] + ctx[i + 1:]
            if f.lhs in rest:
                return _ljt(goal, [f.rhs] + rest, st)
    for i, f in enumerate(ctx):
        if type(f) is Imp and type(f.lhs) is Imp:
            rest = ctx[:i] + ctx[i + 1:]
            cd, b = f.lhs, f.rhs
            if _ljt(cd, [Imp(cd.rhs, b)] + rest, st):
                return _ljt(goal, [b] + rest, st)
    return False


def prove_ljt(f, budget=DEFAULT_BUDGET):
    _require_implicational(f)
    st = _Stats(budget)
    return Verdict(_ljt(f, [], st), nodes=st.nodes, max_context_size=st.max_size)


# ---------------------------------------------------------------------------
# bprove: the two context scans merged into one

def _ljb(goal, ctx, st):
    st.step()
    if goal in ctx:
        return True
    if type(goal) is Imp:
        return _ljb(goal.rhs, [goal.lhs] + ctx, st)
    for i, f in enumerate(ctx):
        if type(f) is Imp:
            rest = ctx[:i] + ctx[i + 1:]
            a, b = f.lhs, f.rhs
            if type(a) is Imp:
                ok = _ljb(a, [Imp(a.rhs, b)] + rest, st)
            else:
                ok = a in rest
            if ok:
                return _ljb(goal, [b] + rest, st)
    return False


def prove_merged(f, budget=DEFAULT_BUDGET):
    _require_implicational(f)
    st = _Stats(budget)
    return Verdict(_ljb(f, [], st), nodes=st.nodes, max_context_size=st.max_size)


# ---------------------------------------------------------------------------
# hprove: nested Horn clause form with the early head-match rejection

def _ljh(goal, ctx, st):
    st.step()
    if goal in ctx:
        return True
    if type(goal) is Rule:
        return _ljh(hatom(goal.head), list(goal.body) + ctx, st)
    leaf = goal.leaf
    if not any(type(c) is Rule and c.head == leaf for c in ctx):
        return False
    for i, c in enumerate(ctx):
        if type(c) is Rule:
            rest = ctx[:i] + ctx[i + 1:]
            b, body = c.head, c.body
            for j, a in enumerate(body):
                if type(a) is Rule:
                    # the duplicated head is atomic by construction; count it
                    st.checks += 1
                    if not (type(b) in (Atom, Falsum) and type(a.head) in (Atom, Falsum)):
                        st.violations += 1
                    ok = _ljh(a, [Rule(b, (hatom(a.head),))] + rest, st)
                else:
                    ok = a in rest
                if ok:
                    left = body[:j] + body[j + 1:]
                    trimmed = Rule(b, left) if left else hatom(b)
                    return _ljh(goal, [trimmed] + rest, st)
    return False


def prove_horn(f, budget=DEFAULT_BUDGET):
    """Accepts a Formula (converted) or a NestedHorn directly."""
    from .transforms import to_horn

    if isinstance(f, (HAtom, Rule)):
        h = f
    else:
        _require_implicational(f)
        h = to_horn(f)
    st = _Stats(budget)
    proved = _ljh(h, [], st)
    return Verdict(proved, nodes=st.nodes, max_context_size=st.max_size,
                   checks=st.checks, violations=st.violations)


def horn_provable(h, budget=DEFAULT_BUDGET):
    """Bare decision on a nested clause, used by the generators."""
    return _ljh(h, [], _Stats(budget))


# ---------------------------------------------------------------------------
# eprove: head-of-goal filter propagated back to implicational form

def _lje(goal, ctx, st):
    st.step()
    if goal in ctx:
        return True
    if type(goal) is Imp:
        return _lje(goal.rhs, [goal.lhs] + ctx, st)
    for i, t in enumerate(ctx):
        if spine_head(t) == goal:
            ctx = [t] + ctx[:i] + ctx[i + 1:]
            break
    else:
        return False
    for i, f in enumerate(ctx):
        if type(f) is Imp:
            rest = ctx[:i] + ctx[i + 1:]
            a, b = f.lhs, f.rhs
            if type(a) is Imp:
                ok = _lje(a, [Imp(a.rhs, b)] + rest, st)
            else:
                ok = a in rest
            if ok:
                return _lje(goal, [b] + rest, st)
    return False


def prove_headfirst(f, budget=DEFAULT_BUDGET):
    _require_implicational(f)
    st = _Stats(budget)
    return Verdict(_lje(f, [], st), nodes=st.nodes, max_context_size=st.max_size)


# ---------------------------------------------------------------------------
# sprove: eprove decorated with proof terms
# named proof terms are built with ('v', id) / ('l', id, body) / ('a', f, a)

def _ljs(goal, ctx, st, fresh):
    st.step()
    for term, a in ctx:
        if a == goal:
            return term
    if type(goal) is Imp:
        x = fresh[0]
        fresh[0] += 1
        body = _ljs(goal.rhs, [(("v", x), goal.lhs)] + ctx, st, fresh)
        if body is None:
            return None
        return ("l", x, body)
    if not any(spine_head(v) == goal for _, v in ctx):
        return None
    for i, (s, f) in enumerate(ctx):
        if type(f) is Imp:
            rest = ctx[:i] + ctx[i + 1:]
            a, b = f.lhs, f.rhs
            if type(a) is Imp:
                # hypothesis D->B is realized from s : (C->D)->B as
                # \d. s (\c. d), so the extracted argument stays well typed
                d = fresh[0]
                c = fresh[0] + 1
                fresh[0] += 2
                realizer = ("l", d, ("a", s, ("l", c, ("v", d))))
                t = _ljs(a, [(realizer, Imp(a.rhs, b))] + rest, st, fresh)
            else:
                t = next((e for e, fa in rest if fa == a), None)
            if t is not None:
                return _ljs(goal, [(("a", s, t), b)] + rest, st, fresh)
    return None


def _debruijn(named):
    def walk(t, binders):
        if t[0] == "v":
            return VarRef(binders.index(t[1]))
        if t[0] == "l":
            return Lam(walk(t[2], [t[1]] + binders))
        return App(walk(t[1], binders), walk(t[2], binders))

    return walk(named, [])


def prove_with_term(f, budget=DEFAULT_BUDGET):
    _require_implicational(f)
    st = _Stats(budget)
    named = _ljs(f, [], st, [0])
    if named is None:
        return Verdict(False, nodes=st.nodes, max_context_size=st.max_size)
    return Verdict(True, proof_term=_debruijn(named), nodes=st.nodes,
                   max_context_size=st.max_size)


# ---------------------------------------------------------------------------
# nvprove: Hudelmaier's fresh-variable step, O(n log n) space

def _ljnv(goal, ctx, st, fresh):
    st.step()
    if goal in ctx:
        return True
    if type(goal) is Imp:
        return _ljnv(goal.rhs, [goal.lhs] + ctx, st, fresh)
    for i, f in enumerate(ctx):
        if type(f) is Imp:
            rest = ctx[:i] + ctx[i + 1:]
            a, b = f.lhs, f.rhs
            if type(a) is Imp:
                p = atom(fresh[0])
                fresh[0] += 1
                dp = Imp(a.rhs, p)
                pb = Imp(p, b)
                st.created(a.lhs)
                st.created(dp)
                st.created(pb)
                ok = _ljnv(p, [a.lhs, dp, pb] + rest, st, fresh)
            else:
                ok = a in rest
            if ok:
                st.created(b)
                return _ljnv(goal, [b] + rest, st, fresh)
    return False


def prove_hudelmaier(f, budget=DEFAULT_BUDGET):
    _require_implicational(f)
    st = _Stats(budget)
    proper = [g.size for g in subformulas(f) if g is not f]
    st.bound = (max(proper) if proper else 0) + 2
    fresh = [max_atom(f) + 1]
    proved = _ljnv(f, [], st, fresh)
    return Verdict(proved, nodes=st.nodes, max_context_size=st.max_size,
                   checks=st.checks, violations=st.violations)


# ---------------------------------------------------------------------------
# full propositional prover (LJT/G4ip with biconditional rules)

def _ljfa(goal, ctx, st):
    st.step()
    if goal in ctx:
        return True
    if FALSE in ctx:
        return True
    t = type(goal)
    if t is Iff:
        return (_ljfa(goal.rhs, [goal.lhs] + ctx, st)
                and _ljfa(goal.lhs, [goal.rhs] + ctx, st))
    if t is Imp:
        return _ljfa(goal.rhs, [goal.lhs] + ctx, st)
    if t is And:
        return _ljfa(goal.lhs, ctx, st) and _ljfa(goal.rhs, ctx, st)
    for i, red in enumerate(ctx):
        rest = ctx[:i] + ctx[i + 1:]
        new = _ljfa_reduce(red, goal, rest, st)
        if new is not None:
            return _ljfa(goal, new, st)
    if t is Or:
        return _ljfa(goal.lhs, ctx, st) or _ljfa(goal.rhs, ctx, st)
    return False


def _ljfa_reduce(red, goal, ctx, st):
    t = type(red)
    if t is Imp:
        a, b = red.lhs, red.rhs
        ta = type(a)
        if ta is Imp:
            if _ljfa(a, [Imp(a.rhs, b)] + ctx, st):
                return [b] + ctx
            return None
        if ta is And:
            return [Imp(a.lhs, Imp(a.rhs, b))] + ctx
        if ta is Or:
            return [Imp(a.lhs, b), Imp(a.rhs, b)] + ctx
        if ta is Iff:
            return [Imp(Imp(a.lhs, a.rhs), Imp(Imp(a.rhs, a.lhs), b))] + ctx
        if a in ctx:
            return [b] + ctx
        return None
    if t is And:
        return [red.lhs, red.rhs] + ctx
    if t is Iff:
        return [Imp(red.lhs, red.rhs), Imp(red.rhs, red.lhs)] + ctx
    if t is Or:
        if _ljfa(goal, [red.lhs] + ctx, st):
            return [red.rhs] + ctx
        return None
    return None


def prove_full_ipc(f, budget=DEFAULT_BUDGET):
    st = _Stats(budget)
    g = negation_normalize(f)
    return Verdict(_ljfa(g, [], st), nodes=st.nodes, max_context_size=st.max_size)


# ---------------------------------------------------------------------------
# oracle: Gentzen LJ for all connectives with explicit loop checking

class OracleBudgetExceeded(StepBudgetExceeded):
    """The oracle ran out of steps; distinct from a not-proved verdict."""


# The oracle runs on interned integer ids: context sets and memo keys
# stay cheap, and each id's connective and children live in flat tables.

_O_IDS = {}      # formula -> id
_O_KIND = []     # id -> 0 leaf, 1 ->, 2 &, 3 v, 4 <->
_O_LHS = []
_O_RHS = []
_O_POS = []      # id -> frozenset of leaf ids with positive occurrences
_O_NEG = []
_O_IMPS = {}     # (lhs id, rhs id) -> implication id

_K_LEAF, _K_IMP, _K_AND, _K_OR, _K_IFF = range(5)
_KINDS = {Imp: _K_IMP, And: _K_AND, Or: _K_OR, Iff: _K_IFF}


def _o_mkimp(a, b):
    # interned implication over already-interned children
    fid = _O_IMPS.get((a, b))
    if fid is None:
        fid = len(_O_KIND)
        _O_IMPS[(a, b)] = fid
        _O_KIND.append(_K_IMP)
        _O_LHS.append(a)
        _O_RHS.append(b)
        _O_POS.append(_O_POS[b] | _O_NEG[a])
        _O_NEG.append(_O_NEG[b] | _O_POS[a])
    return fid


def _o_intern(f):
    fid = _O_IDS.get(f)
    if fid is not None:
        return fid
    t = type(f)
    if t is Atom or t is Falsum:
        fid = len(_O_KIND)
        _O_IDS[f] = fid
        _O_KIND.append(_K_LEAF)
        _O_LHS.append(-1)
        _O_RHS.append(-1)
        _O_POS.append(frozenset((fid,)))
        _O_NEG.append(frozenset())
        return fid
    left = _o_intern(f.lhs)
    right = _o_intern(f.rhs)
    if t is Imp:
        fid = _o_mkimp(left, right)
        _O_IDS[f] = fid
        return fid
    fid = len(_O_KIND)
    _O_IDS[f] = fid
    kind = _KINDS[t]
    _O_KIND.append(kind)
    _O_LHS.append(left)
    _O_RHS.append(right)
    pl, nl = _O_POS[left], _O_NEG[left]
    pr, nr = _O_POS[right], _O_NEG[right]
    if kind == _K_IFF:
        both = pl | nl | pr | nr
        _O_POS.append(both)
        _O_NEG.append(both)
    else:
        _O_POS.append(pl | pr)
        _O_NEG.append(nl | nr)
    return fid

_FALSE_ID = _o_intern(FALSE)

_NODEP = 1 << 60


def _o_atoms(fid):
    # branching atoms of a sequent member (falsum is constant, not an atom)
    return (_O_POS[fid] | _O_NEG[fid]) - {_FALSE_ID}


def _cl_eval(fid, assign):
    """Three-valued classical evaluation under a partial assignment."""
    k = _O_KIND[fid]
    if k == _K_LEAF:
        if fid == _FALSE_ID:
            return False
        return assign.get(fid)
    a = _cl_eval(_O_LHS[fid], assign)
    b = _cl_eval(_O_RHS[fid], assign)
    if k == _K_IMP:
        if a is False or b is True:
            return True
        if a is True and b is False:
            return False
        return None
    if k == _K_AND:
        if a is False or b is False:
            return False
        if a is True and b is True:
            return True
        return None
    if k == _K_OR:
        if a is True or b is True:
            return True
        if a is False and b is False:
            return False
        return None
    if a is None or b is None:
        return None
    return a == b


def _cl_countermodel(goal, ctx, budget):
    """True when some assignment makes the context true and the goal
    false (so the sequent fails classically, hence intuitionistically).
    Gives up and returns False once the node budget is spent."""
    atoms = set()
    for f in ctx:
        atoms |= _o_atoms(f)
    atoms |= _o_atoms(goal)
    order = sorted(atoms)
    spent = [0]

    def search(assign, idx):
        spent[0] += 1
        if spent[0] > budget:
            return False
        undecided = False
        g = _cl_eval(goal, assign)
        if g is True:
            return False
        if g is None:
            undecided = True
        for f in ctx:
            v = _cl_eval(f, assign)
            if v is False:
                return False
            if v is None:
                undecided = True
        if not undecided:
            return True
        while idx < len(order) and order[idx] in assign:
            idx += 1
        if idx == len(order):
            return False
        a = order[idx]
        assign[a] = False
        if search(assign, idx + 1):
            return True
        assign[a] = True
        if search(assign, idx + 1):
            return True
        del assign[a]
        return False

    return search({}, 0)


def _oracle(goal, ctx, path, memo_t, memo_f, memo_cl, st):
    """Gentzen LJ with loop checking, on interned ids.  Returns
    (proved, dep) where dep is the smallest loop-check depth this
    exploration consulted: a success is a real derivation so it never
    depends on pruning; a failure that only consulted entries at or
    below the sequent's own depth held in a self-contained search and
    is cached globally (pruning repeats along a branch preserves
    completeness, so such a failure is absolute)."""
    st.nodes += 1
    if st.nodes > st.budget:
        raise OracleBudgetExceeded("oracle step budget exceeded")
    kind = _O_KIND
    lhs = _O_LHS
    rhs = _O_RHS
    # saturate invertible left rules, re-checking the axioms as we go
    while True:
        if goal in ctx or _FALSE_ID in ctx:
            return True, _NODEP
        repl = None
        for f in ctx:
            k = kind[f]
            if k == _K_AND:
                repl = (f, (lhs[f], rhs[f]))
                break
            if k == _K_IFF:
                a, b = lhs[f], rhs[f]
                repl = (f, (_o_mkimp(a, b), _o_mkimp(b, a)))
                break
            if k == _K_IMP:
                if lhs[f] in ctx:
                    repl = (f, (rhs[f],))
                    break
                if rhs[f] in ctx:
                    # the implication is subsumed (cut admissibility)
                    repl = (f, ())
                    break
        if repl is None:
            break
        old, new = repl
        ctx = (ctx - {old}) | frozenset(new)
    for f in ctx:
        if kind[f] == _K_OR:
            base = ctx - {f}
            ok1, d1 = _oracle(goal, base | {lhs[f]}, path, memo_t, memo_f, memo_cl, st)
            if not ok1:
                return False, d1
            ok2, d2 = _oracle(goal, base | {rhs[f]}, path, memo_t, memo_f, memo_cl, st)
            if ok2:
                return True, _NODEP
            return False, min(d1, d2)
    gk = kind[goal]
    if gk == _K_IMP:
        return _oracle(rhs[goal], ctx | {lhs[goal]}, path, memo_t, memo_f, memo_cl, st)
    if gk == _K_AND:
        ok1, d1 = _oracle(lhs[goal], ctx, path, memo_t, memo_f, memo_cl, st)
        if not ok1:
            return False, d1
        return _oracle(rhs[goal], ctx, path, memo_t, memo_f, memo_cl, st)
    if gk == _K_IFF:
        a, b = lhs[goal], rhs[goal]
        ok1, d1 = _oracle(b, ctx | {a}, path, memo_t, memo_f, memo_cl, st)
        if not ok1:
            return False, d1
        return _oracle(a, ctx | {b}, path, memo_t, memo_f, memo_cl, st)
    # goal is now a leaf or a disjunction
    key = (goal, ctx)
    if key in memo_t:
        return True, _NODEP
    if key in memo_f:
        return False, _NODEP
    if gk == _K_LEAF:
        # relevance refutation: the goal (or falsum) must occur
        # positively in the context for any proof to exist
        pos = _O_POS
        for f in ctx:
            p = pos[f]
            if goal in p or _FALSE_ID in p:
                break
        else:
            memo_f.add(key)
            return False, _NODEP
    if len(ctx) >= 8 and key not in memo_cl:
        # classical countermodels refute intuitionistic sequents
        # outright; worth the evaluation only on large contexts, where
        # the search space would otherwise explode
        if _cl_countermodel(goal, ctx, 4000):
            memo_f.add(key)
            return False, _NODEP
        memo_cl.add(key)
    seen = path.get(key)
    if seen is not None:
        return False, seen
    depth = len(path)
    path[key] = depth
    dep = _NODEP
    try:
        for f in ctx:
            if kind[f] == _K_IMP:
                ok1, d1 = _oracle(lhs[f], ctx, path, memo_t, memo_f, memo_cl, st)
                if ok1:
                    ok2, d2 = _oracle(goal, (ctx - {f}) | {rhs[f]}, path,
                                      memo_t, memo_f, memo_cl, st)
                    if ok2:
                        memo_t.add(key)
                        return True, _NODEP
                    dep = min(dep, d2)
                else:
                    dep = min(dep, d1)
        if gk == _K_OR:
            ok1, d1 = _oracle(lhs[goal], ctx, path, memo_t, memo_f, memo_cl, st)
            if ok1:
                memo_t.add(key)
                return True, _NODEP
            ok2, d2 = _oracle(rhs[goal], ctx, path, memo_t, memo_f, memo_cl, st)
            if ok2:
                memo_t.add(key)
                return True, _NODEP
            dep = min(dep, d1, d2)
        if dep >= depth:
            memo_f.add(key)
            return False, _NODEP
        return False, dep
    finally:
        del path[key]


def _o_reset():
    # keeps the tables bounded across very long sessions; falsum is
    # re-interned first so its id stays 0
    _O_IDS.clear()
    _O_IMPS.clear()
    for tbl in (_O_KIND, _O_LHS, _O_RHS, _O_POS, _O_NEG):
        del tbl[:]
    _o_intern(FALSE)


def _oracle_entry(f, budget):
    if len(_O_KIND) > 2_000_000:
        _o_reset()
    st = _Stats(budget)
    gid = _o_intern(negation_normalize(f))
    proved, _ = _oracle(gid, frozenset(), {}, set(), set(), set(), st)
    return proved, st


def prove_oracle(f, budget=DEFAULT_BUDGET):
    proved, st = _oracle_entry(f, budget)
    return Verdict(proved, nodes=st.nodes)


def oracle_provable(f, budget=DEFAULT_BUDGET):
    return _oracle_entry(f, budget)[0]


PROVERS = {
    "ljt": prove_ljt,
    "merged": prove_merged,
    "horn": prove_horn,
    "headfirst": prove_headfirst,
    "term": prove_with_term,
    "hudelmaier": prove_hudelmaier,
    "fullipc": prove_full_ipc,
    "oracle": prove_oracle,
}

IMPLICATIONAL_PROVERS = (
    "ljt", "merged", "horn", "headfirst", "term", "hudelmaier",
    "fullipc", "oracle",
)
