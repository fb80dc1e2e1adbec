"""Lambda terms, SK trees, unification with occurs-check and type inference.

Lambda terms use de Bruijn indices internally; the display form uses
named binders (``\\a.\\b.a``).  Term size is 0 per variable, 1 per
abstraction, 2 per application.
"""

from .formulas import Atom, FragmentError, Imp, atom


class LambdaTerm:
    __slots__ = ()

    def __repr__(self):
        return print_term(self)


class VarRef(LambdaTerm):
    __slots__ = ("index",)

    def __init__(self, index):
        self.index = index

    def __eq__(self, other):
        return type(other) is VarRef and other.index == self.index

    def __hash__(self):
        return hash(("v", self.index))


class Lam(LambdaTerm):
    __slots__ = ("body",)

    def __init__(self, body):
        self.body = body

    def __eq__(self, other):
        return type(other) is Lam and other.body == self.body

    def __hash__(self):
        return hash(("l", self.body))


class App(LambdaTerm):
    __slots__ = ("fun", "arg")

    def __init__(self, fun, arg):
        self.fun = fun
        self.arg = arg

    def __eq__(self, other):
        return type(other) is App and other.fun == self.fun and other.arg == self.arg

    def __hash__(self):
        return hash(("a", self.fun, self.arg))


def lambda_size(t):
    if type(t) is VarRef:
        return 0
    if type(t) is Lam:
        return 1 + lambda_size(t.body)
    return 2 + lambda_size(t.fun) + lambda_size(t.arg)


def is_closed(t, depth=0):
    if type(t) is VarRef:
        return t.index < depth
    if type(t) is Lam:
        return is_closed(t.body, depth + 1)
    return is_closed(t.fun, depth) and is_closed(t.arg, depth)


def is_normal(t):
    """No redex anywhere; application heads are never abstractions."""
    if type(t) is VarRef:
        return True
    if type(t) is Lam:
        return is_normal(t.body)
    if type(t.fun) is Lam:
        return False
    return is_normal(t.fun) and is_normal(t.arg)


def _binder_names():
    i = 0
    while True:
        q, r = divmod(i, 26)
        yield chr(ord("a") + r) + (str(q) if q else "")
        i += 1


def print_term(t):
    """Named display: ``\\x.body``, application by juxtaposition."""
    names = _binder_names()

    def walk(g, env):
        if type(g) is VarRef:
            return env[g.index]
        if type(g) is Lam:
            x = next(names)
            return "\\%s.%s" % (x, walk(g.body, [x] + env))
        f = walk(g.fun, env)
        if type(g.fun) is Lam:
            f = "(" + f + ")"
        a = walk(g.arg, env)
        if type(g.arg) in (Lam, App):
            a = "(" + a + ")"
        return f + " " + a

    return walk(t, [])


# ---------------------------------------------------------------------------
# SK trees

class SKTree:
    __slots__ = ()


class _SLeaf(SKTree):
    __slots__ = ()

    def __repr__(self):
        return "s"


class _KLeaf(SKTree):
    __slots__ = ()

    def __repr__(self):
        return "k"


S = _SLeaf()
K = _KLeaf()


class Apply(SKTree):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def __repr__(self):
        return "(%r*%r)" % (self.left, self.right)


def sk_size(t):
    """Number of internal application nodes."""
    if type(t) is Apply:
        return 1 + sk_size(t.left) + sk_size(t.right)
    return 0


# ---------------------------------------------------------------------------
# type terms and unification

class TypeTerm:
    __slots__ = ()


class MetaVar(TypeTerm):
    __slots__ = ("ref",)

    def __init__(self):
        self.ref = None


class Arrow(TypeTerm):
    __slots__ = ("src", "dst")

    def __init__(self, src, dst):
        self.src = src
        self.dst = dst


class BindingStore:
    """Metavariable bindings with an undo trail for backtracking."""

    __slots__ = ("trail",)

    def __init__(self):
        self.trail = []

    def mark(self):
        return len(self.trail)

    def undo(self, mark):
        trail = self.trail
        while len(trail) > mark:
            trail.pop().ref = None

    def bind(self, var, term):
        var.ref = term
        self.trail.append(var)


def walk(t):
    """Follow bindings to the representative (no path compression)."""
    while type(t) is MetaVar and t.ref is not None:
        t = t.ref
    return t


def _occurs(var, t):
    # bound metavariables make the term a DAG; track visited arrows so
    # shared substructure is walked once
    seen = set()
    stack = [t]
    while stack:
        g = walk(stack.pop())
        if g is var:
            return True
        if type(g) is Arrow and id(g) not in seen:
            seen.add(id(g))
            stack.append(g.src)
            stack.append(g.dst)
    return False


def unify_occurs(a, b, store):
    """Unify with occurs-check.  On failure the store is rolled back to
    its state at call time; returns a success flag."""
    mark = store.mark()
    if _unify(a, b, store, set()):
        return True
    store.undo(mark)
    return False


def _unify(a, b, store, seen):
    a, b = walk(a), walk(b)
    if a is b:
        return True
    if type(a) is MetaVar:
        if _occurs(a, b):
            return False
        store.bind(a, b)
        return True
    if type(b) is MetaVar:
        if _occurs(b, a):
            return False
        store.bind(b, a)
        return True
    key = (id(a), id(b))
    if key in seen:
        return True
    seen.add(key)
    return _unify(a.src, b.src, store, seen) and _unify(a.dst, b.dst, store, seen)


def resolve(t):
    """Deep-walk a type term into a binding-free copy."""
    t = walk(t)
    if type(t) is MetaVar:
        return t
    return Arrow(resolve(t.src), resolve(t.dst))


def type_term_size(t):
    """Connective count of the type read as a tree, computed in DAG time
    (shared substructure is measured once)."""
    memo = {}

    def size(g):
        g = walk(g)
        if type(g) is MetaVar:
            return 0
        v = memo.get(id(g))
        if v is None:
            v = memo[id(g)] = 1 + size(g.src) + size(g.dst)
        return v

    return size(t)


def type_to_formula(t):
    """Convert a resolved type to a canonical-numbered implicational
    formula; unbound metavariables become atoms by first occurrence."""
    mapping = {}

    def conv(g):
        g = walk(g)
        if type(g) is MetaVar:
            idx = mapping.get(id(g))
            if idx is None:
                idx = mapping[id(g)] = len(mapping)
            return atom(idx)
        return Imp(conv(g.src), conv(g.dst))

    return conv(t)


# ---------------------------------------------------------------------------
# inference

def infer_type_term(t):
    """Principal type of a closed term as a TypeTerm, or None."""
    store = BindingStore()

    def inf(g, env):
        tg = type(g)
        if tg is VarRef:
            if g.index >= len(env):
                raise FragmentError("open term: unbound variable reference")
            return env[g.index]
        if tg is Lam:
            p = MetaVar()
            q = inf(g.body, [p] + env)
            if q is None:
                return None
            return Arrow(p, q)
        f = inf(g.fun, env)
        if f is None:
            return None
        a = inf(g.arg, env)
        if a is None:
            return None
        r = MetaVar()
        if not unify_occurs(f, Arrow(a, r), store):
            return None
        return r

    return inf(t, [])


def infer_type(t):
    """Principal simple type of a closed lambda term as a canonical
    formula, or None when the term is untypable."""
    ty = infer_type_term(t)
    return None if ty is None else type_to_formula(ty)


def type_of_sk_term(t):
    """Principal type of an SK tree as a TypeTerm, or None."""
    store = BindingStore()

    def fresh_s():
        a, b, c = MetaVar(), MetaVar(), MetaVar()
        return Arrow(Arrow(a, Arrow(b, c)), Arrow(Arrow(a, b), Arrow(a, c)))

    def fresh_k():
        a, b = MetaVar(), MetaVar()
        return Arrow(a, Arrow(b, a))

    def inf(g):
        tg = type(g)
        if tg is _SLeaf:
            return fresh_s()
        if tg is _KLeaf:
            return fresh_k()
        f = inf(g.left)
        if f is None:
            return None
        a = inf(g.right)
        if a is None:
            return None
        r = MetaVar()
        if not unify_occurs(f, Arrow(a, r), store):
            return None
        return r

    return inf(t)


def type_of_sk(t):
    """Principal type of an SK tree as a canonical formula, or None."""
    ty = type_of_sk_term(t)
    return None if ty is None else type_to_formula(ty)


def type_check(t, f):
    """True iff implicational formula f is a substitution instance of the
    principal type of closed term t."""
    if not t or not isinstance(t, LambdaTerm):
        return False
    ty = infer_type_term(t)
    if ty is None:
        return False
    binding = {}

    def match(g, target):
        g = walk(g)
        if type(g) is MetaVar:
            seen = binding.get(id(g))
            if seen is None:
                binding[id(g)] = target
                return True
            return seen == target
        if type(target) is not Imp:
            return False
        return match(g.src, target.lhs) and match(g.dst, target.rhs)

    return match(ty, f)
