"""Uniform random generation of trees, set partitions, formulas and
typable terms.

All generators take an explicit ``random.Random`` instance; the same
seed and parameters reproduce the same output stream bit for bit
(Mersenne Twister via the stdlib, no global RNG anywhere).
"""

import random

from .formulas import Imp, atom, formula_size, relabel
from .lambda_terms import (
    App,
    Apply,
    Arrow,
    BindingStore,
    K,
    Lam,
    MetaVar,
    S,
    VarRef,
    type_of_sk_term,
    type_term_size,
    type_to_formula,
    unify_occurs,
)


class RetryBudgetExceeded(RuntimeError):
    """A rejection sampler ran out of attempts."""

    def __init__(self, message, attempts):
        super().__init__("%s after %d attempts" % (message, attempts))
        self.attempts = attempts


def make_rng(seed):
    """Seeded PRNG with explicit state (Mersenne Twister)."""
    return random.Random(seed)


# ---------------------------------------------------------------------------
# exact big-integer count tables

class BigCountTable:
    """Memoized exact tables: Stirling numbers of the second kind,
    Bell numbers, and sequential-completion counts for partitions."""

    def __init__(self):
        self._stirling = {(0, 0): 1}
        self._bell = [1]
        self._completions = {}

    def stirling(self, n, k):
        """S(n,k) via S(n,k) = S(n-1,k-1) + k*S(n-1,k)."""
        if k < 0 or k > n:
            return 0
        if n == 0:
            return 1 if k == 0 else 0
        key = (n, k)
        v = self._stirling.get(key)
        if v is None:
            v = self.stirling(n - 1, k - 1) + k * self.stirling(n - 1, k)
            self._stirling[key] = v
        return v

    def bell(self, n):
        """Bell(n) = sum over k of S(n,k)."""
        while len(self._bell) <= n:
            m = len(self._bell)
            self._bell.append(sum(self.stirling(m, k) for k in range(m + 1)))
        return self._bell[n]

    def completions(self, m, b):
        """Ways to extend a partial partition with b open blocks by m
        further elements: D(m,b) = b*D(m-1,b) + D(m-1,b+1)."""
        if m == 0:
            return 1
        key = (m, b)
        v = self._completions.get(key)
        if v is None:
            v = b * self.completions(m - 1, b) + self.completions(m - 1, b + 1)
            self._completions[key] = v
        return v


_TABLE = BigCountTable()

# above this size the completion triangle is too large to hold exactly;
# block-at-a-time sampling (same uniform distribution) takes over
_SEQUENTIAL_LIMIT = 300


def random_set_partition(n, rng, table=None):
    """Exactly uniform restricted-growth string over all Bell(n)
    partitions of n elements."""
    if n < 1:
        raise ValueError("need n >= 1")
    table = table or _TABLE
    if n <= _SEQUENTIAL_LIMIT:
        return _partition_by_elements(n, rng, table)
    return _partition_by_blocks(n, rng, table)


def _partition_by_elements(n, rng, table):
    # element by element, block chosen proportionally to completion counts
    rgs = [0]
    blocks = 1
    for i in range(1, n):
        m = n - i - 1
        existing = table.completions(m, blocks)
        x = rng.randrange(blocks * existing + table.completions(m, blocks + 1))
        if x < blocks * existing:
            rgs.append(x // existing)
        else:
            rgs.append(blocks)
            blocks += 1
    return rgs


def _partition_by_blocks(n, rng, table):
    # Nijenhuis-Wilf style: draw the size of the block containing the
    # first remaining element with weight C(m-1,s-1)*Bell(m-s), then its
    # members; exact Bell tables keep this uniform
    elements = list(range(n))
    blocks = []
    while elements:
        m = len(elements)
        x = rng.randrange(table.bell(m))
        weight = 0
        binom = 1  # C(m-1, s-1)
        for s in range(1, m + 1):
            weight += binom * table.bell(m - s)
            if x < weight:
                break
            binom = binom * (m - s) // s
        rest = elements[1:]
        members = sorted(rng.sample(rest, s - 1)) if s > 1 else []
        block = [elements[0]] + members
        blocks.append(block)
        taken = set(block)
        elements = [e for e in rest if e not in taken]
    rgs = [0] * n
    for i, block in enumerate(sorted(blocks, key=lambda b: b[0])):
        for e in block:
            rgs[e] = i
    return rgs


# ---------------------------------------------------------------------------
# uniform random binary trees (Remy's algorithm, Knuth's R)

def _remy_links(n, rng):
    links = [0] * (2 * n + 1)
    for k in range(1, n + 1):
        x = rng.randrange(4 * k - 2)
        b = x & 1
        j = x >> 1
        links[2 * k - b] = 2 * k
        links[2 * k - 1 + b] = links[j]
        links[j] = 2 * k - 1
    return links


def remy_tree(n, rng):
    """Uniform implicational skeleton with n internal nodes; leaves are
    atoms numbered by traversal position.  O(n) pointer work."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n == 0:
        return atom(0)
    return _build_tree(_remy_links(n, rng))


def _build_tree(links):
    # two passes: structural pairs bottom-up, then leaf numbering
    root = links[0]
    # post-order via reversed pre-order with right child visited first
    order = []
    stack = [root]
    while stack:
        cur = stack.pop()
        order.append(cur)
        if cur % 2 == 1:
            stack.append(links[cur])
            stack.append(links[cur + 1])
    built = {}
    for cur in reversed(order):
        if cur % 2 == 1:
            built[cur] = (built[links[cur]], built[links[cur + 1]])
        else:
            built[cur] = None
    # number leaves left to right and build formulas iteratively
    pos = [0]
    out = []
    stack = [(built[root], False)]
    while stack:
        node, done = stack.pop()
        if node is None:
            out.append(atom(pos[0]))
            pos[0] += 1
        elif not done:
            stack.append((node, True))
            stack.append((node[1], False))
            stack.append((node[0], False))
        else:
            right = out.pop()
            left = out.pop()
            out.append(Imp(left, right))
    return out[0]


def remy_sk_tree(n, rng):
    """Uniform SK tree with n application nodes; leaves drawn uniformly
    from {s, k} left to right."""
    if n == 0:
        return S if rng.randrange(2) else K
    links = _remy_links(n, rng)
    root = links[0]
    order = []
    stack = [root]
    while stack:
        cur = stack.pop()
        order.append(cur)
        if cur % 2 == 1:
            stack.append(links[cur])
            stack.append(links[cur + 1])
    built = {}
    for cur in reversed(order):
        if cur % 2 == 1:
            built[cur] = (built[links[cur]], built[links[cur + 1]])
        else:
            built[cur] = None
    out = []
    stack = [(built[root], False)]
    while stack:
        node, done = stack.pop()
        if node is None:
            out.append(S if rng.randrange(2) else K)
        elif not done:
            stack.append((node, True))
            stack.append((node[1], False))
            stack.append((node[0], False))
        else:
            right = out.pop()
            left = out.pop()
            out.append(Apply(left, right))
    return out[0]


# ---------------------------------------------------------------------------
# random formulas

def random_impl_formula(n, rng):
    """Uniform (shape, partition) pair: a Remy tree of n implications
    with leaves decorated by a uniform set partition of n+1."""
    skel = remy_tree(n, rng)
    if n == 0:
        return skel
    labels = random_set_partition(n + 1, rng)
    return relabel(skel, labels)


def random_sk_tautology(n, m, rng, retries=10 ** 6):
    """Type of a random typable SK tree of n applications, retried until
    the type has at least m connectives.  The result is provable by
    construction (it is an inhabited type)."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    for _ in range(retries):
        ty = _sk_attempt(n, rng)
        if ty is not None and type_term_size(ty) >= m:
            return type_to_formula(ty)
    raise RetryBudgetExceeded("no typable SK tree of the required type size", retries)


# The rejection loop above visits millions of trees before a hit, so the
# attempt path is tuned: subtrees up to _SK_CAP applications are interned
# and their principal-type templates cached (None when untypable), and an
# attempt aborts at the first untypable subtree it assembles.  Over the
# arrow-only signature, unification can only fail the occurs-check, so
# typability reduces to an acyclicity pass over the new bindings.
# Templates live in a flat form (fresh-variable count, arrow index pairs,
# root index) so instantiation is a single array-building loop.

_SK_CAP = 6
_SK_KEYS = {}       # (left key, right key) -> interned node key
_SK_TEMPLATES = {}  # node key -> flat template, or None when untypable


def _sk_template_leaves():
    #   s : (a->b->c)->(a->b)->a->c      k : a->b->a
    _SK_TEMPLATES["s"] = (3, ((1, 2), (0, 3), (0, 1), (0, 2), (5, 6), (4, 7)), 8)
    _SK_TEMPLATES["k"] = (2, ((1, 0), (0, 2)), 3)


_sk_template_leaves()


def _instantiate(tpl):
    nvars, pairs, root = tpl
    cells = [MetaVar() for _ in range(nvars)]
    append = cells.append
    for s, d in pairs:
        append(Arrow(cells[s], cells[d]))
    return cells[root]


def _runify(a, b, trail):
    # rational-tree unification: bind without occurs-check, share work on
    # revisited pairs; over arrows alone it cannot fail
    stack = [(a, b)]
    seen = set()
    while stack:
        x, y = stack.pop()
        while type(x) is MetaVar and x.ref is not None:
            x = x.ref
        while type(y) is MetaVar and y.ref is not None:
            y = y.ref
        if x is y:
            continue
        if type(x) is MetaVar:
            x.ref = y
            trail.append(x)
            continue
        if type(y) is MetaVar:
            y.ref = x
            trail.append(y)
            continue
        key = (id(x), id(y))
        if key not in seen:
            seen.add(key)
            stack.append((x.src, y.src))
            stack.append((x.dst, y.dst))
    return True


def _acyclic(vars_to_check):
    colors = {}

    def check(t):
        while type(t) is MetaVar and t.ref is not None:
            t = t.ref
        if type(t) is MetaVar:
            return True
        k = id(t)
        c = colors.get(k)
        if c == 2:
            return True
        if c == 1:
            return False
        colors[k] = 1
        if not (check(t.src) and check(t.dst)):
            return False
        colors[k] = 2
        return True

    return all(check(v) for v in vars_to_check)


def _snapshot(t):
    # resolved, trail-free flat copy (assumes acyclicity already checked)
    var_ids = {}
    arrow_ids = {}
    tagged = []

    def visit(g):
        while type(g) is MetaVar and g.ref is not None:
            g = g.ref
        if type(g) is MetaVar:
            i = var_ids.get(id(g))
            if i is None:
                i = var_ids[id(g)] = len(var_ids)
            return (True, i)
        j = arrow_ids.get(id(g))
        if j is None:
            s = visit(g.src)
            d = visit(g.dst)
            j = arrow_ids[id(g)] = len(tagged)
            tagged.append((s, d))
        return (False, j)

    root = visit(t)
    nv = len(var_ids)

    def idx(tag):
        is_var, i = tag
        return i if is_var else nv + i

    pairs = tuple((idx(s), idx(d)) for s, d in tagged)
    return (nv, pairs, idx(root))


def _sk_combine_cached(lk, rk):
    key = _SK_KEYS.get((lk, rk))
    if key is None:
        key = _SK_KEYS[(lk, rk)] = len(_SK_KEYS)
        ltpl, rtpl = _SK_TEMPLATES[lk], _SK_TEMPLATES[rk]
        if ltpl is None or rtpl is None:
            _SK_TEMPLATES[key] = None
        else:
            res = MetaVar()
            trail = []
            _runify(_instantiate(ltpl), Arrow(_instantiate(rtpl), res), trail)
            _SK_TEMPLATES[key] = _snapshot(res) if _acyclic(trail) else None
    return key


_REMY_PRODUCTS = {}


def _remy_draw(n, rng):
    # one exact draw over the whole sequence of Remy insertion choices
    prod = _REMY_PRODUCTS.get(n)
    if prod is None:
        p = 1
        for k in range(1, n + 1):
            p *= 4 * k - 2
        prod = _REMY_PRODUCTS[n] = p
    r = rng.randrange(prod)
    links = [0] * (2 * n + 1)
    for k in range(1, n + 1):
        r, x = divmod(r, 4 * k - 2)
        b = x & 1
        j = x >> 1
        links[2 * k - b] = 2 * k
        links[2 * k - 1 + b] = links[j]
        links[j] = 2 * k - 1
    return links


def _sk_attempt(n, rng):
    # one uniform draw: insertion choices first, then leaves left to
    # right during bottom-up assembly, aborting at the first untypable
    # subtree assembled
    if len(_SK_TEMPLATES) > 500_000:
        _SK_KEYS.clear()
        _SK_TEMPLATES.clear()
        _sk_template_leaves()
    links = _remy_draw(n, rng)
    leafbits = rng.getrandbits(n + 1)
    order = []
    append_o = order.append
    stack = [links[0]]
    push = stack.append
    while stack:
        cur = stack.pop()
        append_o(cur)
        if cur & 1:
            push(links[cur])
            push(links[cur + 1])
    templates = _SK_TEMPLATES
    out = []  # (app count, key or None, live type or None)
    trail = []
    nleaf = 0
    cap = _SK_CAP
    for cur in reversed(order):
        if not cur & 1:
            out.append((0, "s" if (leafbits >> nleaf) & 1 else "k", None))
            nleaf += 1
            continue
        rn, rk, rty = out.pop()
        ln, lk, lty = out.pop()
        apps = ln + rn + 1
        if apps <= cap:
            key = _sk_combine_cached(lk, rk)
            if templates[key] is None:
                return None
            out.append((apps, key, None))
            continue
        fl = _instantiate(templates[lk]) if lk is not None else lty
        fa = _instantiate(templates[rk]) if rk is not None else rty
        res = MetaVar()
        before = len(trail)
        _runify(fl, Arrow(fa, res), trail)
        # a new cycle must pass through a binding made just now
        if not _acyclic(trail[before:]):
            return None
        out.append((apps, None, res))
    apps, key, ty = out[0]
    if key is not None:
        tpl = templates[key]
        return None if tpl is None else _instantiate(tpl)
    return ty


# ---------------------------------------------------------------------------
# random typed normal forms (size-bounded sampling with retry)

def random_typed_nf(target, rng, retries=10 ** 5):
    """A closed typable beta-normal form with size within 10% of target,
    paired with its principal type."""
    if target < 1:
        raise ValueError("need target >= 1")
    lo = -(-9 * target // 10)  # ceil(0.9 t)
    hi = 11 * target // 10
    for attempt in range(1, retries + 1):
        res = _try_nf(hi, rng)
        if res is None:
            continue
        term, used, top = res
        if used < lo:
            continue
        return term, type_to_formula(top)
    raise RetryBudgetExceeded("no typable normal form in the size window", retries)


def _try_nf(budget, rng):
    store = BindingStore()
    top = MetaVar()
    out = _rand_nf(top, [], 0, budget, store, rng)
    if out is None:
        return None
    term, rem = out
    return term, budget - rem, top


def _rand_nf(ty, ctx, depth, budget, store, rng):
    # one randomized descent; None on a dead end
    options = []
    if budget >= 1:
        options.append("lam")
    if ctx:
        options.append("var")
        if budget >= 2:
            options.extend(["app", "app"])
    if not options:
        return None
    rng.shuffle(options)
    for choice in options:
        if choice == "lam":
            mark = store.mark()
            p, q = MetaVar(), MetaVar()
            if unify_occurs(ty, Arrow(p, q), store):
                sub = _rand_nf(q, [(depth, p)] + ctx, depth + 1, budget - 1, store, rng)
                if sub is not None:
                    return Lam(sub[0]), sub[1]
            store.undo(mark)
        elif choice == "var":
            order = list(ctx)
            rng.shuffle(order)
            for bdepth, vty in order:
                mark = store.mark()
                if unify_occurs(ty, vty, store):
                    return VarRef(depth - 1 - bdepth), budget
                store.undo(mark)
        else:
            p = MetaVar()
            fun = _rand_head(Arrow(p, ty), ctx, depth, budget - 2, store, rng)
            if fun is not None:
                arg = _rand_nf(p, ctx, depth, fun[1], store, rng)
                if arg is not None:
                    return App(fun[0], arg[0]), arg[1]
    return None


def _rand_head(ty, ctx, depth, budget, store, rng):
    # application head: a variable or another application, never a lambda
    options = ["var"]
    if budget >= 2:
        options.append("app")
    rng.shuffle(options)
    for choice in options:
        if choice == "var":
            order = list(ctx)
            rng.shuffle(order)
            for bdepth, vty in order:
                mark = store.mark()
                if unify_occurs(ty, vty, store):
                    return VarRef(depth - 1 - bdepth), budget
                store.undo(mark)
        else:
            p = MetaVar()
            fun = _rand_head(Arrow(p, ty), ctx, depth, budget - 2, store, rng)
            if fun is not None:
                arg = _rand_nf(p, ctx, depth, fun[1], store, rng)
                if arg is not None:
                    return App(fun[0], arg[0]), arg[1]
    return None
