"""Abstract syntax of the simply-typed resource calculus.

Terms are variables applied to a sequence of bags, abstractions with a
typed binder, or applications of a term to a bag.  Bags are finite
multisets; they keep their elements sorted by printed form so equal
multisets print identically.  Term equality is alpha-equivalence: every
term caches a nameless key (bound variables become de Bruijn indices) and
``==``/``hash`` go through it.

Formal sums with natural coefficients are plain :class:`Sum` objects, a
thin wrapper around a dict that drops zero entries.
"""

import re

__all__ = [
    "SimpleType", "Base", "Arrow", "O", "arrows", "split_type", "type_size",
    "Term", "Var", "Abs", "App", "Bag", "Sum",
    "apply_bags", "free_vars", "var_count", "size", "fresh_name",
    "parse", "parse_type", "parse_bag", "print_term", "print_type", "ParseError",
    "sum_add",
]


# ---------------------------------------------------------------------------
# Types

class SimpleType:
    __slots__ = ()

    def __repr__(self):
        return "SimpleType(%r)" % print_type(self)

    def __str__(self):
        return print_type(self)


class Base(SimpleType):
    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, Base)

    def __hash__(self):
        return hash("o")


class Arrow(SimpleType):
    __slots__ = ("domain", "codomain", "_hash")

    def __init__(self, domain, codomain):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "_hash", hash((domain, codomain)))

    def __setattr__(self, name, value):
        raise AttributeError("types are immutable")

    def __eq__(self, other):
        return (isinstance(other, Arrow) and self._hash == other._hash
                and self.domain == other.domain
                and self.codomain == other.codomain)

    def __hash__(self):
        return self._hash


O = Base()


def arrows(domains, target=O):
    """Build ``A1 -> ... -> An -> target``."""
    result = target
    for dom in reversed(list(domains)):
        result = Arrow(dom, result)
    return result


def split_type(ty):
    """Return the domains of ``ty`` written as ``A1 -> ... -> An -> o``."""
    domains = []
    while isinstance(ty, Arrow):
        domains.append(ty.domain)
        ty = ty.codomain
    return tuple(domains)


def type_size(ty):
    """Number of occurrences of the base type."""
    if isinstance(ty, Arrow):
        return type_size(ty.domain) + type_size(ty.codomain)
    return 1


def print_type(ty):
    if isinstance(ty, Arrow):
        dom = print_type(ty.domain)
        if isinstance(ty.domain, Arrow):
            dom = "(" + dom + ")"
        return dom + " -> " + print_type(ty.codomain)
    return "o"


# ---------------------------------------------------------------------------
# Terms

class Term:
    """Common base of :class:`Var`, :class:`Abs` and :class:`App`."""

    __slots__ = ("_key", "_text")

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    @property
    def key(self):
        """Alpha-invariant canonical serialization."""
        k = self._key
        if k is None:
            k = _alpha_key(self, ())
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other):
        return isinstance(other, Term) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        return print_term(self)

    def __repr__(self):
        return "%s(%r)" % (type(self).__name__, print_term(self))


class Var(Term):
    """A variable applied to a (possibly empty) sequence of bags."""

    __slots__ = ("name", "args")

    def __init__(self, name, args=()):
        args = tuple(args)
        for b in args:
            if not isinstance(b, Bag):
                raise TypeError("variable arguments must be bags")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_key", None)
        object.__setattr__(self, "_text", None)


class Abs(Term):
    __slots__ = ("binder", "binder_type", "body")

    def __init__(self, binder, binder_type, body):
        object.__setattr__(self, "binder", binder)
        object.__setattr__(self, "binder_type", binder_type)
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "_key", None)
        object.__setattr__(self, "_text", None)


class App(Term):
    __slots__ = ("fun", "arg")

    def __init__(self, fun, arg):
        if not isinstance(arg, Bag):
            raise TypeError("application argument must be a bag")
        object.__setattr__(self, "fun", fun)
        object.__setattr__(self, "arg", arg)
        object.__setattr__(self, "_key", None)
        object.__setattr__(self, "_text", None)


class Bag:
    """Finite multiset of terms, stored in canonical (printed) order."""

    __slots__ = ("elements", "_key")

    def __init__(self, elements=()):
        elems = sorted(elements, key=print_term)
        object.__setattr__(self, "elements", tuple(elems))
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("bags are immutable")

    @property
    def key(self):
        k = self._key
        if k is None:
            k = _bag_key(self, ())
            object.__setattr__(self, "_key", k)
        return k

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return isinstance(other, Bag) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __add__(self, other):
        return Bag(self.elements + other.elements)

    def __str__(self):
        return _print_bag(self)

    def __repr__(self):
        return "Bag(%r)" % _print_bag(self)


def _alpha_key(t, env):
    if isinstance(t, Var):
        try:
            ref = "#%d" % (len(env) - 1 - _rindex(env, t.name))
        except ValueError:
            ref = t.name
        return "v" + ref + "".join(_bag_key(b, env) for b in t.args) + ";"
    if isinstance(t, Abs):
        return ("l" + print_type(t.binder_type) + "."
                + _alpha_key(t.body, env + (t.binder,)))
    return "a(" + _alpha_key(t.fun, env) + ")" + _bag_key(t.arg, env)


def _bag_key(b, env):
    if not env and b._key is not None:
        return b._key
    return "[" + ",".join(sorted(_alpha_key(e, env) for e in b.elements)) + "]"


def _rindex(seq, item):
    for i in range(len(seq) - 1, -1, -1):
        if seq[i] == item:
            return i
    raise ValueError(item)


def apply_bags(t, bags):
    """Apply ``t`` to each bag in turn, keeping variables in spine form."""
    bags = tuple(bags)
    if not bags:
        return t
    if isinstance(t, Var):
        return Var(t.name, t.args + bags)
    for b in bags:
        t = App(t, b)
    return t


def free_vars(t):
    """Set of free variable names of a term or bag."""
    out = set()
    _free_vars(t, frozenset(), out)
    return out


def _free_vars(t, bound, out):
    if isinstance(t, Bag):
        for e in t.elements:
            _free_vars(e, bound, out)
    elif isinstance(t, Var):
        if t.name not in bound:
            out.add(t.name)
        for b in t.args:
            _free_vars(b, bound, out)
    elif isinstance(t, Abs):
        _free_vars(t.body, bound | {t.binder}, out)
    else:
        _free_vars(t.fun, bound, out)
        _free_vars(t.arg, bound, out)


def var_count(t):
    """Number of variable nodes (head occurrences) in a term, bag or sequence."""
    if isinstance(t, Bag):
        return sum(var_count(e) for e in t.elements)
    if isinstance(t, tuple):
        return sum(var_count(b) for b in t)
    if isinstance(t, Var):
        return 1 + sum(var_count(b) for b in t.args)
    if isinstance(t, Abs):
        return var_count(t.body)
    return var_count(t.fun) + var_count(t.arg)


def size(t):
    """Syntactic size: one per variable, abstraction and application node."""
    if isinstance(t, Bag):
        return sum(size(e) for e in t.elements)
    if isinstance(t, tuple):
        return sum(size(b) for b in t)
    if isinstance(t, Var):
        return 1 + sum(size(b) for b in t.args)
    if isinstance(t, Abs):
        return 1 + size(t.body)
    return 1 + size(t.fun) + size(t.arg)


def fresh_name(base, avoid):
    """A name derived from ``base`` that is not in ``avoid``."""
    if base not in avoid:
        return base
    stem = base.rstrip("0123456789") or "v"
    i = 1
    while stem + str(i) in avoid:
        i += 1
    return stem + str(i)


# ---------------------------------------------------------------------------
# Formal sums

class Sum:
    """Finite formal sum with positive integer (or rational) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, items=None):
        self.terms = {}
        if items is None:
            return
        if isinstance(items, dict):
            items = items.items()
        for item, coeff in items:
            self.add(item, coeff)

    @classmethod
    def of(cls, *items):
        return cls((item, 1) for item in items)

    def add(self, item, coeff=1):
        if not coeff:
            return
        c = self.terms.get(item, 0) + coeff
        if c:
            self.terms[item] = c
        else:
            del self.terms[item]

    def __add__(self, other):
        out = Sum(self.terms)
        for item, coeff in other.terms.items():
            out.add(item, coeff)
        return out

    def scale(self, k):
        return Sum((item, k * c) for item, c in self.terms.items())

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, item):
        return self.terms.get(item, 0)

    def __contains__(self, item):
        return item in self.terms

    def __eq__(self, other):
        if isinstance(other, Sum):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for text, coeff in sorted((_print_any(i), c) for i, c in self.terms.items()):
            parts.append(text if coeff == 1 else "%s * (%s)" % (coeff, text))
        return " + ".join(parts)

    def __repr__(self):
        return "Sum(%s)" % self


def sum_add(a, b):
    """Pointwise sum of two formal sums."""
    return a + b


def _print_any(x):
    if isinstance(x, Term):
        return print_term(x)
    if isinstance(x, Bag):
        return _print_bag(x)
    if isinstance(x, tuple):
        return "<" + " ".join(_print_bag(b) for b in x) + ">"
    return str(x)


# ---------------------------------------------------------------------------
# Printing

def print_term(t):
    text = t._text
    if text is None:
        text = _print(t)
        object.__setattr__(t, "_text", text)
    return text


def _print(t):
    if isinstance(t, Var):
        if not t.args:
            return t.name
        return t.name + " " + " ".join(_print_bag(b) for b in t.args)
    if isinstance(t, Abs):
        ty = print_type(t.binder_type)
        if isinstance(t.binder_type, Arrow):
            ty = "(" + ty + ")"
        return "\\%s:%s. %s" % (t.binder, ty, print_term(t.body))
    head = print_term(t.fun)
    if isinstance(t.fun, Abs):
        head = "(" + head + ")"
    return head + " " + _print_bag(t.arg)


def _print_bag(b):
    return "[" + ", ".join(print_term(e) for e in b.elements) + "]"


# ---------------------------------------------------------------------------
# Parsing

class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__("%s at position %d" % (message, position))
        self.message = message
        self.position = position


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>->|→)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[\\λ:.,\[\]()])
""", re.VERBOSE)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "punct":
                kind = "\\" if value == "λ" else value
            elif kind == "arrow":
                kind = "->"
            tokens.append((kind, m.group(), m.start()))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def pos(self):
        return self.tokens[self.i][2]

    def take(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            found = tok[1] or "end of input"
            raise ParseError("expected %r, found %r" % (kind, found), tok[2])
        self.i += 1
        return tok[1]

    def finish(self):
        if self.peek() != "eof":
            raise ParseError("unexpected %r" % self.tokens[self.i][1], self.pos())

    def type_(self):
        left = self.type_atom()
        if self.peek() == "->":
            self.take("->")
            return Arrow(left, self.type_())
        return left

    def type_atom(self):
        if self.peek() == "(":
            self.take("(")
            ty = self.type_()
            self.take(")")
            return ty
        pos = self.pos()
        name = self.take("ident")
        if name != "o":
            raise ParseError("unknown base type %r" % name, pos)
        return O

    def term(self):
        if self.peek() == "\\":
            self.take("\\")
            name = self.take("ident")
            self.take(":")
            ty = self.type_()
            self.take(".")
            return Abs(name, ty, self.term())
        head = self.atom()
        bags = []
        while self.peek() == "[":
            bags.append(self.bag())
        return apply_bags(head, bags)

    def atom(self):
        if self.peek() == "(":
            self.take("(")
            t = self.term()
            self.take(")")
            return t
        if self.peek() == "ident":
            return Var(self.take("ident"))
        tok = self.tokens[self.i]
        raise ParseError("expected a term, found %r" % (tok[1] or "end of input"), tok[2])

    def bag(self):
        self.take("[")
        elems = []
        if self.peek() != "]":
            elems.append(self.term())
            while self.peek() == ",":
                self.take(",")
                elems.append(self.term())
        self.take("]")
        return Bag(elems)


def parse(text):
    """Parse a term of the surface grammar."""
    p = _Parser(text)
    t = p.term()
    p.finish()
    return t


def parse_type(text):
    p = _Parser(text)
    ty = p.type_()
    p.finish()
    return ty


def parse_bag(text):
    p = _Parser(text)
    b = p.bag()
    p.finish()
    return b
