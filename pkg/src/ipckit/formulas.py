"""Formula and nested-clause ASTs, text format, sizes and basic rewrites.

Atoms are non-negative integer indices.  The text format accepts both
decimal numerals (mapped directly to indices) and identifiers (mapped to
free indices per formula).  Operator precedence, tightest first:
``~``, ``&``, ``v``, ``->``, ``<->``; all binary operators associate to
the right in the text format.
"""


class ParseError(ValueError):
    """Malformed formula text; carries the offending position."""

    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


class FragmentError(ValueError):
    """Input formula lies outside the fragment an operation accepts."""


class Formula:
    __slots__ = ()

    def __repr__(self):
        return print_formula(self)


class Atom(Formula):
    __slots__ = ("index", "size", "_hash")

    def __init__(self, index):
        self.index = index
        self.size = 0
        self._hash = hash(("at", index))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (type(other) is Atom and other.index == self.index)


class Falsum(Formula):
    __slots__ = ("size", "_hash")

    def __init__(self):
        self.size = 0
        self._hash = hash("falsum")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return other is self


FALSE = Falsum()

_ATOMS = {}


def atom(index):
    """Interned atom constructor; atoms compare by identity."""
    a = _ATOMS.get(index)
    if a is None:
        if index < 0:
            raise ValueError("atom index must be non-negative: %d" % index)
        a = _ATOMS[index] = Atom(index)
    return a


class _Binary(Formula):
    __slots__ = ("lhs", "rhs", "size", "_hash")
    _tag = "?"

    def __init__(self, lhs, rhs):
        self.lhs = lhs
        self.rhs = rhs
        self.size = lhs.size + rhs.size + 1
        self._hash = hash((self._tag, lhs._hash, rhs._hash))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not type(self) or other._hash != self._hash:
            return False
        return other.lhs == self.lhs and other.rhs == self.rhs


class Imp(_Binary):
    __slots__ = ()
    _tag = "->"


class And(_Binary):
    __slots__ = ()
    _tag = "&"


class Or(_Binary):
    __slots__ = ()
    _tag = "v"


class Iff(_Binary):
    __slots__ = ()
    _tag = "<->"


class Not(Formula):
    __slots__ = ("arg", "size", "_hash")

    def __init__(self, arg):
        self.arg = arg
        self.size = arg.size + 1
        self._hash = hash(("~", arg._hash))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not Not or other._hash != self._hash:
            return False
        return other.arg == self.arg


def imp(lhs, rhs):
    return Imp(lhs, rhs)


def and_(lhs, rhs):
    return And(lhs, rhs)


def or_(lhs, rhs):
    return Or(lhs, rhs)


def iff(lhs, rhs):
    return Iff(lhs, rhs)


def not_(arg):
    return Not(arg)


def formula_size(f):
    """Number of internal connective nodes."""
    return f.size


def is_implicational(f):
    t = type(f)
    if t is Atom:
        return True
    if t is Imp:
        return is_implicational(f.lhs) and is_implicational(f.rhs)
    return False


def subformulas(f):
    """All subformula nodes of f, including f itself (preorder)."""
    out = [f]
    t = type(f)
    if t is Not:
        out.extend(subformulas(f.arg))
    elif t in (Imp, And, Or, Iff):
        out.extend(subformulas(f.lhs))
        out.extend(subformulas(f.rhs))
    return out


def atoms_of(f):
    """Set of atom indices occurring in f."""
    t = type(f)
    if t is Atom:
        return {f.index}
    if t is Falsum:
        return set()
    if t is Not:
        return atoms_of(f.arg)
    return atoms_of(f.lhs) | atoms_of(f.rhs)


def max_atom(f):
    """Largest atom index in f, or -1 when f has no atoms."""
    ats = atoms_of(f)
    return max(ats) if ats else -1


def spine_head(f):
    """Final formula of the implication spine (f itself if not an Imp)."""
    while type(f) is Imp:
        f = f.rhs
    return f


def spine_parts(f):
    """Split an implication chain a1->a2->...->h into ([a1..ak], h)."""
    ants = []
    while type(f) is Imp:
        ants.append(f.lhs)
        f = f.rhs
    return ants, f


# ---------------------------------------------------------------------------
# canonical numbering and rewrites

def canonical_numbering(f):
    """Rename atoms to 0,1,2,... by first occurrence in a left-to-right
    depth-first traversal; structure unchanged."""
    mapping = {}

    def walk(g):
        t = type(g)
        if t is Atom:
            idx = mapping.get(g.index)
            if idx is None:
                idx = mapping[g.index] = len(mapping)
            return atom(idx)
        if t is Falsum:
            return g
        if t is Not:
            return Not(walk(g.arg))
        return t(walk(g.lhs), walk(g.rhs))

    return walk(f)


def relabel(f, labels):
    """Replace positional atoms: Atom(i) becomes Atom(labels[i])."""

    def walk(g):
        t = type(g)
        if t is Atom:
            return atom(labels[g.index])
        if t is Falsum:
            return g
        if t is Not:
            return Not(walk(g.arg))
        return t(walk(g.lhs), walk(g.rhs))

    return walk(f)


def negation_normalize(f):
    """Replace every ~a by a->false; output has no Not node."""
    t = type(f)
    if t is Atom or t is Falsum:
        return f
    if t is Not:
        return Imp(negation_normalize(f.arg), FALSE)
    return t(negation_normalize(f.lhs), negation_normalize(f.rhs))


# ---------------------------------------------------------------------------
# total order on formulas (mirrors Prolog's standard order of terms:
# integers < 'false' < compounds; compounds by arity, then by operator
# name '&' < '->' < '<->' < 'v', then arguments left to right)

_OP_RANK = {Not: 0, And: 1, Imp: 2, Iff: 3, Or: 4}


def formula_order(a, b):
    """Three-way comparison; returns a negative, zero or positive int."""
    ta, tb = type(a), type(b)
    ra = 0 if ta is Atom else 1 if ta is Falsum else 2 if ta is Not else 3
    rb = 0 if tb is Atom else 1 if tb is Falsum else 2 if tb is Not else 3
    if ra != rb:
        return ra - rb
    if ta is Atom:
        return a.index - b.index
    if ta is Falsum:
        return 0
    if ta is Not:
        if tb is not Not:
            return -1
        return formula_order(a.arg, b.arg)
    if tb is Not:
        return 1
    c = _OP_RANK[ta] - _OP_RANK[tb]
    if c:
        return c
    c = formula_order(a.lhs, b.lhs)
    if c:
        return c
    return formula_order(a.rhs, b.rhs)


# ---------------------------------------------------------------------------
# nested Horn clauses

class NestedHorn:
    __slots__ = ()

    def __repr__(self):
        return print_horn(self)


class HAtom(NestedHorn):
    __slots__ = ("leaf", "_hash")

    def __init__(self, leaf):
        self.leaf = leaf
        self._hash = hash(("h", leaf._hash))

    @property
    def horn_size(self):
        return 0

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (type(other) is HAtom and other.leaf == self.leaf)


class Rule(NestedHorn):
    __slots__ = ("head", "body", "horn_size", "_hash")

    def __init__(self, head, body):
        if not body:
            raise ValueError("empty-bodied rule; use HAtom instead")
        self.head = head
        self.body = body
        self.horn_size = len(body) + sum(b.horn_size for b in body)
        self._hash = hash(("r", head._hash, tuple(b._hash for b in body)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not Rule or other._hash != self._hash:
            return False
        return other.head == self.head and other.body == self.body


_HATOMS = {}


def hatom(leaf):
    """Interned atomic clause (leaf is an Atom or the false constant)."""
    h = _HATOMS.get(leaf)
    if h is None:
        h = _HATOMS[leaf] = HAtom(leaf)
    return h


def rule(head, body):
    """Clause with atomic head; empty bodies are trimmed to the head."""
    body = tuple(body)
    if not body:
        return hatom(head)
    return Rule(head, body)


def horn_size(h):
    """Total count of body-element positions across all Rule nodes."""
    return h.horn_size


def horn_leaves(h):
    """Leaf formulas of a nested clause in preorder (head before body)."""
    if type(h) is HAtom:
        return [h.leaf]
    out = [h.head]
    for b in h.body:
        out.extend(horn_leaves(b))
    return out


def _leaf_key(leaf):
    # mirrors Prolog order: integers before the 'false' atom
    if type(leaf) is Atom:
        return (0, leaf.index)
    return (1, 0)


def term_order(a, b):
    """Strict total order on nested clauses: HAtom < Rule; HAtoms by atom
    index; Rules by head, then body lexicographically.  Returns a negative,
    zero or positive int."""
    ta, tb = type(a) is Rule, type(b) is Rule
    if ta != tb:
        return 1 if ta else -1
    if not ta:
        ka, kb = _leaf_key(a.leaf), _leaf_key(b.leaf)
        return (ka > kb) - (ka < kb)
    ka, kb = _leaf_key(a.head), _leaf_key(b.head)
    if ka != kb:
        return (ka > kb) - (ka < kb)
    for x, y in zip(a.body, b.body):
        c = term_order(x, y)
        if c:
            return c
    return len(a.body) - len(b.body)


def relabel_horn(h, labels):
    """Replace positional leaf atoms by labels[position] (preorder)."""
    pos = [0]

    def nxt():
        i = pos[0]
        pos[0] += 1
        return atom(labels[i])

    def walk(g):
        if type(g) is HAtom:
            return hatom(nxt())
        head = nxt()
        return Rule(head, tuple(walk(b) for b in g.body))

    return walk(h)


def horn_depth(h):
    """Rule-nesting depth: 0 for a bare atom, 1 + max over body for rules."""
    if type(h) is HAtom:
        return 0
    return 1 + max(horn_depth(b) for b in h.body)


# ---------------------------------------------------------------------------
# text format

_SYMS = ("<->", "->", "(", ")", "&", "~")


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        matched = False
        for s in _SYMS:
            if text.startswith(s, i):
                toks.append((s, s, i))
                i += len(s)
                matched = True
                break
        if matched:
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word == "v":
                toks.append(("v", "v", i))
            elif word == "false":
                toks.append(("false", word, i))
            else:
                toks.append(("ident", word, i))
            i = j
            continue
        raise ParseError("unexpected character %r" % c, i)
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, toks, symbols):
        self.toks = toks
        self.i = 0
        self.symbols = symbols
        self.used = {int(v) for k, v, _ in toks if k == "num"}

    def peek(self):
        return self.toks[self.i][0]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        k, v, pos = self.next()
        if k != kind:
            raise ParseError("expected %r, found %r" % (kind, v or k), pos)

    def alloc(self, name):
        idx = self.symbols.get(name)
        if idx is None:
            idx = 0
            taken = self.used | set(self.symbols.values())
            while idx in taken:
                idx += 1
            self.symbols[name] = idx
        return idx

    def formula(self):
        left = self.imp()
        if self.peek() == "<->":
            self.next()
            return Iff(left, self.formula())
        return left

    def imp(self):
        left = self.disj()
        if self.peek() == "->":
            self.next()
            return Imp(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        if self.peek() == "v":
            self.next()
            return Or(left, self.disj())
        return left

    def conj(self):
        left = self.neg()
        if self.peek() == "&":
            self.next()
            return And(left, self.conj())
        return left

    def neg(self):
        k, v, pos = self.next()
        if k == "~":
            return Not(self.neg())
        if k == "(":
            f = self.formula()
            self.expect(")")
            return f
        if k == "false":
            return FALSE
        if k == "num":
            return atom(int(v))
        if k == "ident":
            return atom(self.alloc(v))
        raise ParseError("unexpected %r" % (v or k), pos)


def parse_formula(text, symbols=None):
    """Parse the text format into a Formula.

    `symbols` optionally carries a mutable identifier-to-index table so
    related formulas can share a numbering.
    """
    toks = _tokenize(text)
    p = _Parser(toks, {} if symbols is None else symbols)
    f = p.formula()
    k, v, pos = p.next()
    if k != "eof":
        raise ParseError("trailing input %r" % (v or k), pos)
    return f


_PREC = {Iff: 1, Imp: 2, Or: 3, And: 4}


def print_formula(f):
    """Render with minimal parentheses; parse_formula inverts this."""
    t = type(f)
    if t is Atom:
        return str(f.index)
    if t is Falsum:
        return "false"
    if t is Not:
        a = f.arg
        body = print_formula(a)
        if type(a) in _PREC:
            body = "(" + body + ")"
        return "~" + body
    op = {Iff: "<->", Imp: "->", Or: " v ", And: "&"}[t]
    prec = _PREC[t]
    left = print_formula(f.lhs)
    if type(f.lhs) in _PREC and _PREC[type(f.lhs)] <= prec:
        left = "(" + left + ")"
    right = print_formula(f.rhs)
    if type(f.rhs) in _PREC and _PREC[type(f.rhs)] < prec:
        right = "(" + right + ")"
    return left + op + right


def print_horn(h):
    """Prolog-style rendering: head:-[b1, b2, ...]."""

    def walk(g, outer):
        if type(g) is HAtom:
            return print_formula(g.leaf)
        body = ", ".join(walk(b, False) for b in g.body)
        s = "%s:-[%s]" % (print_formula(g.head), body)
        return s if outer else "(" + s + ")"

    return walk(h, True)


def parse_horn(text, symbols=None):
    """Parse the head:-[...] clause format."""
    symbols = {} if symbols is None else symbols

    class HP:
        def __init__(self, toks):
            self.toks = toks
            self.i = 0

        def peek(self):
            return self.toks[self.i]

        def next(self):
            t = self.toks[self.i]
            self.i += 1
            return t

    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif text.startswith(":-", i):
            toks.append((":-", i))
            i += 2
        elif c in "[](),":
            toks.append((c, i))
            i += 1
        else:
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            if j == i:
                raise ParseError("unexpected character %r" % c, i)
            toks.append((text[i:j], i))
            i = j
    toks.append(("", n))
    p = HP(toks)

    def leaf(word, pos):
        if word == "false":
            return FALSE
        if word.isdigit():
            return atom(int(word))
        if word and (word[0].isalpha() or word[0] == "_"):
            idx = symbols.setdefault(word, len(symbols))
            return atom(idx)
        raise ParseError("expected atom, found %r" % word, pos)

    def clause():
        w, pos = p.next()
        if w == "(":
            c = clause()
            w2, pos2 = p.next()
            if w2 != ")":
                raise ParseError("expected ')'", pos2)
            return c
        head = leaf(w, pos)
        if p.peek()[0] != ":-":
            return hatom(head)
        p.next()
        w2, pos2 = p.next()
        if w2 != "[":
            raise ParseError("expected '['", pos2)
        body = [clause()]
        while p.peek()[0] == ",":
            p.next()
            body.append(clause())
        w3, pos3 = p.next()
        if w3 != "]":
            raise ParseError("expected ']'", pos3)
        return rule(head, body)

    c = clause()
    w, pos = p.next()
    if w != "":
        raise ParseError("trailing input %r" % w, pos)
    return c
