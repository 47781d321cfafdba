"""Interpretation of resource terms as strategies, and the soundness harness.

Terms are interpreted compositionally:

* ``\\x. t`` is the currying of ``[[t]]`` after the merge isomorphism
  ``Γ ⊗ A |- Γ, x``;
* ``t b`` is ``ev ∘ ([[t]] ⊗ Π[[b]]) ∘ δ_Γ``;
* ``x<b1, ..., bn>`` is ``ev ∘ ((id• ∘ var_x) ⊗ pack) ∘ δ_Γ`` where ``pack``
  tensors the products ``Π[[bj]]`` after an ``n``-fold ``δ_Γ``;
* bags and sequences are kept as lists of strategies, and ``Π`` folds a
  bag with ``f * g = μ ∘ (f ⊗ g) ∘ δ``.

Every intermediate result has finite support.  The one infinite factor in
the variable clause, ``id• ∘ var_x``, is only queried above the right
positions the evaluation map will actually meet.
"""

import random

from . import arena as ar
from . import strategy as st
from .correspondence import encode_term
from .rewrite import normalize, one_step_reducts, rename
from .syntax import Abs, App, Bag, Sum, Var, fresh_name, parse_type, size, split_type
from .typecheck import Context, _as_context, typecheck_term

__all__ = [
    "interpret_term", "interpret_bag", "interpret_seq", "interpret_sum",
    "bag_product", "product", "unit_bag", "pack", "pairing", "projection",
    "merge_kernel", "var_kernel", "semantic_substitute",
    "semantic_substitute_bag", "semantic_substitute_seq", "check_invariance",
    "check_normal_form_correspondence", "Report", "generate_corpus",
    "random_term", "encode_sum", "DEFAULT_CONTEXT",
]


def _ctx_arena(ctx):
    return ar.interpret_context(ctx)


def merge_kernel(ctx, ty):
    """``Γ ⊗ A |- Γ, x``: component ``(1, i)`` becomes ``i``, ``2`` becomes ``n + 1``."""
    n = len(ctx)
    gamma = _ctx_arena(ctx)
    a = ar.interpret_type(ty)
    target = ar.interpret_types(list(ctx.types) + [ty])

    def f(m):
        if m[0] == 1:
            return m[1:]
        return (n + 1,) + m[1:]

    return st.iso_kernel("merge", ar.tensor(gamma, a), target, f)


def var_kernel(ctx, name):
    """Projection of ``Γ`` on the component of ``name``, seen on ``(B1 ⊗ ... ⊗ Bn) => o``."""
    i = ctx.position(name) + 1
    ty = ctx.lookup(name)
    domains = split_type(ty)
    m = len(domains)
    base = ar.interpret_type(ty)
    right = ar.flat_arrow(domains)
    return st.Kernel("var_%s" % name, _ctx_arena(ctx), right, base,
                     lambda a: (1, i) + a,
                     lambda a: (2,) + ar.to_flat_address(a, m))


def unit_bag(gamma, a):
    """``1 = η ∘ ε``: only the empty isogmentation, with coefficient 1."""
    return st.Strategy.single(gamma, a, (), 1)


def product(f, g):
    """``f * g = μ ∘ (f ⊗ g) ∘ δ``."""
    inner = st.evaluate(st.Compose(st.Tensor(f, g), st.delta(f.left)))
    return st.evaluate(st.Compose(st.mu(f.right), inner))


def bag_product(fs, gamma=None, a=None):
    """``Π [f1, ..., fn]``; the empty bag needs its interface."""
    fs = list(fs)
    if not fs:
        return unit_bag(gamma, a)
    out = fs[0]
    for f in fs[1:]:
        out = product(out, f)
    return out


def pairing(f, g):
    """``<f, g> = (f ⊗ g) ∘ δ`` on a common left side."""
    return st.Compose(st.Tensor(f, g), st.delta(f.left))


def projection(a, b, i):
    """``π1 : A ⊗ B |- A`` or ``π2 : A ⊗ B |- B``, discarding the other side."""
    if i == 1:
        return st.Compose(st.right_unitor(a), st.Tensor(st.identity(a), st.epsilon(b)))
    return st.Compose(st.left_unitor(b), st.Tensor(st.epsilon(a), st.identity(b)))


def pack(gamma, bags, types):
    """``(Π b1 ⊗ ... ⊗ Π bn) ∘ δ^n`` on ``Γ |- B1 ⊗ ... ⊗ Bn``."""
    factors = [bag_product(b, gamma, ar.interpret_type(t)) for b, t in zip(bags, types)]
    return st.evaluate(st.Compose(st.Tensor(*factors), st.delta(gamma, len(factors))))


def _root_over(pos):
    """The pointed position of ``(B1 ⊗ ... ⊗ Bn) => o`` with ``pos`` below its root."""
    return (((2,), tuple(sorted(_prefix(c) for c in pos))),)


def _prefix(code):
    return ((1,) + code[0], tuple(_prefix(c) for c in code[1]))


def _bind(ctx, binder, body):
    """Extend ``ctx`` with ``binder``, renaming it away from existing names."""
    if binder in ctx:
        new = fresh_name(binder, set(ctx.names))
        body = rename(body, binder, new)
        binder = new
    return binder, body


def interpret_term(ctx, t):
    """The strategy of ``t`` on ``[[Γ]] |- [[A]]``."""
    ctx = _as_context(ctx)
    gamma = _ctx_arena(ctx)
    if isinstance(t, Abs):
        binder, body = _bind(ctx, t.binder, t.body)
        inner_ctx = Context(ctx.bindings + ((binder, t.binder_type),))
        f = interpret_term(inner_ctx, body)
        g = st.compose(f, merge_kernel(ctx, t.binder_type))
        return st.curry(g, gamma, ar.interpret_type(t.binder_type))
    if isinstance(t, App):
        fun_ty = typecheck_term(ctx, t.fun)
        f = interpret_term(ctx, t.fun)
        arg = bag_product(interpret_bag(ctx, t.arg, fun_ty.domain), gamma,
                          ar.interpret_type(fun_ty.domain))
        inner = st.evaluate(st.Compose(st.Tensor(f, arg), st.delta(gamma)))
        ev = st.evaluation(ar.interpret_type(fun_ty.domain), ar.interpret_type(fun_ty.codomain))
        return st.evaluate(st.Compose(ev, inner))
    domains = split_type(ctx.lookup(t.name))
    packed = pack(gamma, interpret_seq(ctx, t.args, domains), domains)
    head = st.Compose(st.pointed_identity(ar.flat_arrow(domains)), var_kernel(ctx, t.name))
    table = {}
    for y in {st.right_position(k) for k in packed.table}:
        for k, c in head.from_right(_root_over(y)).items():
            table[k] = table.get(k, 0) + c
    k_fin = st.Strategy(gamma, ar.flat_arrow(domains), table)
    inner = st.evaluate(st.Compose(st.Tensor(k_fin, packed), st.delta(gamma)))
    ev = st.evaluation(ar.interpret_types(domains), ar.BASE)
    return st.evaluate(st.Compose(ev, inner))


def interpret_bag(ctx, b, ty=None):
    """A bag is interpreted as the list of its elements' strategies."""
    ctx = _as_context(ctx)
    return [interpret_term(ctx, e) for e in b.elements]


def interpret_seq(ctx, seq, types):
    ctx = _as_context(ctx)
    return [interpret_bag(ctx, b, ty) for b, ty in zip(seq, types)]


def interpret_sum(ctx, s, ty):
    """Additive extension to formal sums; ``ty`` fixes the interface of the empty sum."""
    ctx = _as_context(ctx)
    out = st.Strategy.zero(_ctx_arena(ctx), ar.interpret_type(ty))
    for t, c in s.items():
        out = out.plus(interpret_term(ctx, t).scale(c))
    return out


def encode_sum(ctx, s, ty):
    """The strategy whose coefficients are those of a sum of normal terms."""
    ctx = _as_context(ctx)
    table = {}
    for t, c in s.items():
        k = encode_term(ctx, t, ty).key
        table[k] = table.get(k, 0) + c
    return st.Strategy(_ctx_arena(ctx), ar.interpret_type(ty), table)


# ---------------------------------------------------------------------------
# Semantic substitution

def semantic_substitute(f, g, ctx, ty):
    """``f ∘ merge ∘ (id_Γ ⊗ Π g) ∘ δ_Γ`` for ``f`` on ``Γ, x:ty |- B``.

    ``g`` is a list of strategies on ``Γ |- [[ty]]`` (a semantic bag).
    Evaluated from the right, starting from the finite support of ``f``.
    """
    ctx = _as_context(ctx)
    gamma = _ctx_arena(ctx)
    a = ar.interpret_type(ty)
    pg = bag_product(g, gamma, a)
    right = st.Compose(st.Tensor(st.identity(gamma), pg), st.delta(gamma))
    return st.evaluate(st.Compose(f, st.Compose(merge_kernel(ctx, ty), right)))


def semantic_substitute_bag(fs, g, ctx, ty, target):
    """Substitution into a semantic bag, through its product."""
    ctx = _as_context(ctx)
    gamma_x = ar.interpret_types(list(ctx.types) + [ty])
    return semantic_substitute(bag_product(fs, gamma_x, ar.interpret_type(target)), g, ctx, ty)


def semantic_substitute_seq(seq, g, ctx, ty, targets):
    """Substitution into a semantic sequence, through ``pack``."""
    ctx = _as_context(ctx)
    gamma_x = ar.interpret_types(list(ctx.types) + [ty])
    return semantic_substitute(pack(gamma_x, seq, targets), g, ctx, ty)


# ---------------------------------------------------------------------------
# Checks

class Report:
    """Outcome of a check; ``mismatches`` lists ``(key, expected, actual)``."""

    def __init__(self, subject, mismatches=(), details=None):
        self.subject = subject
        self.mismatches = list(mismatches)
        self.details = details or {}

    @property
    def ok(self):
        return not self.mismatches

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "mismatches": [{"key": repr(k), "expected": str(a), "actual": str(b)}
                           for k, a, b in self.mismatches],
            **{k: v for k, v in self.details.items()},
        }

    def __repr__(self):
        return "Report(%s, %s)" % (self.subject, "ok" if self.ok else
                                   "%d mismatches" % len(self.mismatches))


def _diff(expected, actual):
    out = []
    for k in set(expected.table) | set(actual.table):
        a, b = expected.table.get(k, 0), actual.table.get(k, 0)
        if a != b:
            out.append((k, a, b))
    return out


def check_normal_form_correspondence(ctx, t):
    """Compare the interpretation of ``t`` with the encoding of its normal form."""
    ctx = _as_context(ctx)
    ty = typecheck_term(ctx, t)
    nf = normalize(t)
    expected = encode_sum(ctx, nf, ty)
    actual = interpret_term(ctx, t)
    return Report(str(t), _diff(expected, actual),
                  {"summands": len(nf), "max_coefficient": max(nf.terms.values(), default=0)})


def check_invariance(ctx, s):
    """``[[s]] = [[s']]`` for every one-step reduct ``s'`` of every summand."""
    ctx = _as_context(ctx)
    if not isinstance(s, Sum):
        s = Sum.of(s)
    mismatches = []
    checked = 0
    for t, c in s.items():
        ty = typecheck_term(ctx, t)
        before = interpret_term(ctx, t)
        for r in one_step_reducts(t):
            checked += 1
            mismatches.extend(_diff(before, interpret_sum(ctx, r, ty)))
    return Report(str(s), mismatches, {"reducts": checked})


# ---------------------------------------------------------------------------
# Random terms

TYPE_FAMILY = tuple(parse_type(t) for t in ("o", "o -> o", "(o -> o) -> o", "o -> o -> o"))


def random_term(rng, ctx, ty, budget, redex=0.35, dup=0.4):
    """A random term of type ``ty`` in ``ctx`` using at most about ``budget`` nodes.

    Redexes are biased to receive bags whose size matches the number of
    occurrences of their variable, with repeated elements; otherwise the
    size is random, which often makes the term vanish.
    """
    ctx = _as_context(ctx)
    binders = []
    for dom in split_type(ty):
        name = fresh_name("x", set(ctx.names) | {b for b, _ in binders})
        binders.append((name, dom))
    inner = Context(ctx.bindings + tuple(binders))
    body = _random_base(rng, inner, budget - len(binders), redex, dup)
    for name, dom in reversed(binders):
        body = Abs(name, dom, body)
    return body


def _random_base(rng, ctx, budget, redex, dup):
    if budget >= 4 and rng.random() < redex:
        from .rewrite import occurrences
        a = rng.choice(TYPE_FAMILY[:2]) if budget < 8 else rng.choice(TYPE_FAMILY)
        name = fresh_name("v", set(ctx.names))
        inner = Context(ctx.bindings + ((name, a),))
        share = rng.randint(max(1, (budget - 3) // 2), max(1, budget - 3))
        # prefer bodies that use the bound variable several times
        body = max((_random_base(rng, inner, share, redex * 0.5, dup) for _ in range(8)),
                   key=lambda b: occurrences(b, name))
        occ = occurrences(body, name)
        if rng.random() < 0.7:
            k = occ
        else:
            k = rng.choice([0, 1, 2, occ + 1, max(0, occ - 1)])
        elems = []
        left = budget - 1 - size(body) - 1
        if k >= 2 and rng.random() < dup:
            e = random_term(rng, ctx, a, max(1, left // k), redex * 0.5, dup)
            return App(Abs(name, a, body), Bag([e] * k))
        for _ in range(k):
            if elems and rng.random() < dup:
                elems.append(rng.choice(elems))
            else:
                elems.append(random_term(rng, ctx, a, max(1, left // max(1, k)), redex * 0.5, dup))
        return App(Abs(name, a, body), Bag(elems))
    heads = [(n, t) for n, t in ctx.bindings
             if len(split_type(t)) <= max(0, budget - 1) or not split_type(t)]
    heads = heads or list(ctx.bindings)
    # recently bound variables are favoured as heads
    name, ty = heads[-1] if rng.random() < 0.4 else rng.choice(heads)
    args = []
    left = budget - 1
    for dom in split_type(ty):
        k = rng.choice([0, 1, 1, 1, 2]) if left > 1 else rng.choice([0, 1])
        elems = []
        for _ in range(k):
            if elems and rng.random() < dup:
                elems.append(rng.choice(elems))
            else:
                share = max(1, left // (2 * max(1, k)))
                elems.append(random_term(rng, ctx, dom, share, redex * 0.7, dup))
                left -= size(elems[-1])
        args.append(Bag(elems))
    return Var(name, tuple(args))


DEFAULT_CONTEXT = Context.parse("y:o, z:o, h:o -> o, g:o -> o -> o, f:(o -> o) -> o")


def _kind(t):
    nf = normalize(t)
    if not nf:
        return "zero"
    if max(nf.terms.values()) >= 2:
        return "multi"
    return "plain"


def generate_corpus(n, seed=0, ctx=DEFAULT_CONTEXT, max_size=14, quota=None):
    """``n`` distinct random typed terms of size at most ``max_size``, deterministic in ``seed``.

    Terms are redexes more often than not, so that coefficients and
    vanishing sums both occur often.  ``quota`` (default ``n // 25``) is a
    lower bound on the number of terms normalizing to 0 and on the number
    whose normal form has a coefficient of at least 2; the last free slots
    are kept for whichever kind is still short.
    """
    rng = random.Random(seed)
    ctx = _as_context(ctx)
    if quota is None:
        quota = n // 25
    need = {"zero": quota, "multi": quota}
    seen = set()
    out = []
    attempts = 0
    while len(out) < n:
        attempts += 1
        if attempts > 500 * n:
            raise RuntimeError("could not generate enough distinct terms")
        ty = rng.choice(TYPE_FAMILY)
        t = random_term(rng, ctx, ty, rng.randint(3, max_size), redex=0.6, dup=0.6)
        if size(t) > max_size or t in seen:
            continue
        kind = _kind(t)
        if need.get(kind, 0) <= 0 and n - len(out) <= sum(max(0, v) for v in need.values()):
            continue
        typecheck_term(ctx, t)
        seen.add(t)
        out.append(t)
        if kind in need:
            need[kind] -= 1
    return out
