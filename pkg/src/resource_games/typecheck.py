"""Bidirectional type checking for eta-long resource terms.

Terms synthesize their type.  Bags are checked against an expected type
because the empty bag has no type of its own.  A variable must be applied
to exactly as many bags as its type has arguments, and the result is
always the base type.
"""

from .syntax import (Abs, App, Arrow, Bag, O, ParseError, Var, _Parser,
                     print_type, split_type)


__all__ = [
    "TypingError", "UnboundVariable", "ArityMismatch", "DomainMismatch",
    "NotEtaLong", "HeterogeneousBag", "Context", "typecheck_term",
    "typecheck_bag", "typecheck_seq", "is_normal", "well_typed", "parse_judgment",
]


class TypingError(Exception):
    """Raised when a judgment is not derivable; ``kind`` names the rule."""

    kind = "TypingError"

    def __init__(self, message):
        super().__init__("%s: %s" % (self.kind, message))
        self.message = message


class UnboundVariable(TypingError):
    kind = "UnboundVariable"


class ArityMismatch(TypingError):
    kind = "ArityMismatch"


class DomainMismatch(TypingError):
    kind = "DomainMismatch"


class NotEtaLong(TypingError):
    kind = "NotEtaLong"


class HeterogeneousBag(TypingError):
    kind = "HeterogeneousBag"


class Context:
    """Ordered list of distinct typed variables."""

    __slots__ = ("bindings", "_index")

    def __init__(self, bindings=()):
        bindings = tuple((name, ty) for name, ty in bindings)
        index = {}
        for i, (name, _) in enumerate(bindings):
            if name in index:
                raise ValueError("duplicate variable %r in context" % name)
            index[name] = i
        self.bindings = bindings
        self._index = index

    @classmethod
    def parse(cls, text):
        """Parse ``x:T, y:T`` (empty text gives the empty context)."""
        if not text.strip():
            return cls()
        p = _Parser(text)
        bindings = []
        while True:
            name = p.take("ident")
            p.take(":")
            bindings.append((name, p.type_()))
            if p.peek() != ",":
                break
            p.take(",")
        p.finish()
        return cls(bindings)

    def __len__(self):
        return len(self.bindings)

    def __iter__(self):
        return iter(self.bindings)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Context) and self.bindings == other.bindings

    def __hash__(self):
        return hash(self.bindings)

    def lookup(self, name):
        return self.bindings[self._index[name]][1]

    def position(self, name):
        """Zero-based position of ``name``."""
        return self._index[name]

    @property
    def names(self):
        return tuple(name for name, _ in self.bindings)

    @property
    def types(self):
        return tuple(ty for _, ty in self.bindings)

    def extend(self, name, ty):
        """Append a binding; an existing binding of ``name`` is shadowed."""
        kept = [(n, t) for n, t in self.bindings if n != name]
        return Context(kept + [(name, ty)])

    def __str__(self):
        return ", ".join("%s:%s" % (n, print_type(t)) for n, t in self.bindings)

    def __repr__(self):
        return "Context(%r)" % str(self)


def _as_context(ctx):
    if isinstance(ctx, Context):
        return ctx
    if isinstance(ctx, str):
        return Context.parse(ctx)
    return Context(ctx or ())


def typecheck_term(ctx, t):
    """Synthesize the type of ``t`` in ``ctx``."""
    ctx = _as_context(ctx)
    if isinstance(t, Var):
        if t.name not in ctx:
            raise UnboundVariable("variable %r is not in the context" % t.name)
        ty = ctx.lookup(t.name)
        domains = split_type(ty)
        if len(t.args) != len(domains):
            if not t.args:
                raise NotEtaLong("%r has type %s but is not applied"
                                 % (t.name, print_type(ty)))
            raise ArityMismatch("%r expects %d argument bags, got %d"
                                % (t.name, len(domains), len(t.args)))
        typecheck_seq(ctx, t.args, domains)
        return O
    if isinstance(t, Abs):
        body = typecheck_term(ctx.extend(t.binder, t.binder_type), t.body)
        return Arrow(t.binder_type, body)
    if isinstance(t, App):
        fun = typecheck_term(ctx, t.fun)
        if not isinstance(fun, Arrow):
            raise DomainMismatch("applying a term of base type")
        typecheck_bag(ctx, t.arg, fun.domain)
        return fun.codomain
    raise TypeError("not a term: %r" % (t,))


def typecheck_bag(ctx, b, expected=None):
    """Check a bag; returns its type, or ``expected`` for the empty bag.

    Without an expected type the empty bag yields ``None`` (it checks at
    any type).
    """
    ctx = _as_context(ctx)
    found = None
    for e in b.elements:
        ty = typecheck_term(ctx, e)
        if found is None:
            found = ty
        elif ty != found:
            raise HeterogeneousBag("bag mixes %s and %s"
                                   % (print_type(found), print_type(ty)))
    if found is None:
        return expected
    if expected is not None and found != expected:
        raise DomainMismatch("bag of %s where %s is expected"
                             % (print_type(found), print_type(expected)))
    return found


def typecheck_seq(ctx, seq, expected):
    ctx = _as_context(ctx)
    seq = tuple(seq)
    expected = tuple(expected)
    if len(seq) != len(expected):
        raise ArityMismatch("sequence of %d bags for %d types"
                            % (len(seq), len(expected)))
    return tuple(typecheck_bag(ctx, b, ty) for b, ty in zip(seq, expected))


def is_normal(ctx, t):
    """True when ``t`` has no application node (no redex can occur)."""
    if isinstance(t, Bag):
        return all(is_normal(ctx, e) for e in t.elements)
    if isinstance(t, tuple):
        return all(is_normal(ctx, b) for b in t)
    if isinstance(t, Var):
        return all(is_normal(ctx, b) for b in t.args)
    if isinstance(t, Abs):
        return is_normal(ctx, t.body)
    return False


def well_typed(ctx, t):
    try:
        typecheck_term(ctx, t)
    except (TypingError, ParseError):
        return False
    return True


def parse_judgment(text):
    """Split ``Gamma ⊢ term`` (or ``Gamma |- term``) into its two halves."""
    for sep in ("⊢", "|-"):
        if sep in text:
            left, right = text.split(sep, 1)
            return Context.parse(left), right.strip()
    return Context(), text.strip()
