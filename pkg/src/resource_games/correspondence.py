"""Normal resource terms as pointed isogmentations, and back.

A normal term of type ``A1 -> ... -> An -> o`` is a block of abstractions
over a body ``x<b1, ..., bm>`` of type ``o``.  Its augmentation lives on
``[[Gamma]] |- [[A]]``:

* the abstractions only move displays: argument ``j`` of the target type
  goes from context slot ``|Gamma| + j`` to ``(2,) + (2,)*(j-1) + (1,)``;
* the head variable contributes a negative event on the result root and a
  positive event on the root of its context component, one after the other;
* the argument bags hang below that positive event, bag ``j`` on the
  ``j``-th argument of the variable's type;
* a bag is the disjoint union of the augmentations of its elements.
"""

from .arena import from_flat_address, to_flat_address
from .causal import Augmentation, canonicalize
from functools import lru_cache

from .syntax import Abs, App, Bag, Var, fresh_name, split_type
from .typecheck import Context, typecheck_term, is_normal, _as_context

__all__ = [
    "DecodeError", "encode_term", "encode_bag", "encode_seq", "decode_term",
    "decode_bag", "decode_seq", "decode", "enumerate_normal_terms",
]


class DecodeError(ValueError):
    pass


def _extend_fresh(ctx, binder):
    """Append ``binder`` to ``ctx``, renaming it if the name is taken."""
    if binder in ctx:
        return fresh_name(binder, set(ctx.names)), True
    return binder, False


def _aug(display, sparent, dparent):
    return Augmentation(display, sparent, dparent)


def _union(parts):
    """Disjoint union of raw (display, sparent, dparent) triples."""
    disp, sp, dp = [], [], []
    for d, s, p in parts:
        n = len(disp)
        disp.extend(d)
        sp.extend(x + n if x >= 0 else -1 for x in s)
        dp.extend(x + n if x >= 0 else -1 for x in p)
    return disp, sp, dp


def _enc_term(ctx, t, ty):
    domains = split_type(ty)
    for _ in domains:
        if not isinstance(t, Abs):
            raise ValueError("term is not eta-long at type %s" % ty)
        binder, renamed = _extend_fresh(ctx, t.binder)
        body = t.body
        if renamed:
            from .rewrite import rename
            body = rename(body, t.binder, binder)
        ctx = Context(ctx.bindings + ((binder, t.binder_type),))
        t = body
    disp, sp, dp = _enc_body(ctx, t)
    n = len(domains)
    if n:
        # argument roots now sit below the result root, which is event 0
        base = len(ctx) - n
        sp = [0 if s < 0 and d[0] == 1 and d[1] > base else s
              for d, s in zip(disp, sp)]
        disp = [_curry_address(d, base, n) for d in disp]
    return disp, sp, dp


def _curry_address(d, base, n):
    if d[0] == 2:
        return (2,) + (2,) * n
    if d[1] <= base:
        return d
    return (2,) + from_flat_address((1, d[1] - base) + d[2:], n)


def _enc_body(ctx, t):
    if isinstance(t, App) or not isinstance(t, Var):
        raise ValueError("not a normal term of base type: %s" % t)
    i = ctx.position(t.name) + 1
    domains = split_type(ctx.lookup(t.name))
    m = len(domains)
    disp, sp, dp = _enc_seq(ctx, t.args, domains)
    # shift by the two new events
    sp = [s + 2 if s >= 0 else -1 for s in sp]
    dp = [p + 2 if p >= 0 else -1 for p in dp]
    out_d = [(2,), (1, i) + (2,) * m]
    out_s = [-1, -1]
    out_p = [-1, 0]
    for e, d in enumerate(disp):
        if d[0] == 2:
            d = (1, i) + from_flat_address((1,) + d[1:], m)
            if sp[e] < 0:
                sp[e] = 1
            if dp[e] < 0:
                dp[e] = 1
        out_d.append(d)
    return out_d, out_s + sp, out_p + dp


def _enc_bag(ctx, b, ty):
    return _union(_enc_term(ctx, e, ty) for e in b.elements)


def _enc_seq(ctx, seq, types):
    parts = []
    for j, (b, ty) in enumerate(zip(seq, types), 1):
        d, s, p = _enc_bag(ctx, b, ty)
        parts.append(([(2, j) + x[1:] if x[0] == 2 else x for x in d], s, p))
    return _union(parts)


def _prepare(ctx, t):
    ctx = _as_context(ctx)
    if not is_normal(ctx, t):
        raise ValueError("only normal expressions can be encoded")
    return ctx


def encode_term(ctx, t, ty=None):
    """The pointed isogmentation of a normal term on ``[[ctx]] |- [[ty]]``."""
    ctx = _prepare(ctx, t)
    if ty is None:
        ty = typecheck_term(ctx, t)
    return canonicalize(_aug(*_enc_term(ctx, t, ty)))


def encode_bag(ctx, b, ty):
    """Disjoint union of the encodings of the elements (a non-pointed isogmentation)."""
    ctx = _prepare(ctx, b)
    return canonicalize(_aug(*_enc_bag(ctx, b, ty)))


def encode_seq(ctx, seq, types):
    """Encoding on ``[[ctx]] |- [[B1]] x ... x [[Bm]]``; bag ``j`` is tagged ``j``."""
    seq = tuple(seq)
    ctx = _prepare(ctx, seq)
    return canonicalize(_aug(*_enc_seq(ctx, seq, tuple(types))))


# ---------------------------------------------------------------------------
# Decoding

def _as_aug(q):
    if isinstance(q, Augmentation):
        return q
    return q.representative


def decode_term(q, ctx, ty):
    """The normal term whose encoding is ``q`` (pointed, on ``[[ctx]] |- [[ty]]``)."""
    ctx = _as_context(ctx)
    q = _as_aug(q)
    if len(q.dynamic_roots()) != 1:
        raise DecodeError("a term needs exactly one initial event, found %d"
                          % len(q.dynamic_roots()))
    return _dec_term(q, ctx, ty)


def _dec_term(q, ctx, ty):
    domains = split_type(ty)
    n = len(domains)
    binders = []
    for dom in domains:
        name = fresh_name("x%d" % (len(ctx) + 1), set(ctx.names))
        binders.append((name, dom))
        ctx = Context(ctx.bindings + ((name, dom),))
    if n:
        base = len(ctx) - n
        disp = []
        for d in q.display:
            if d[0] == 1:
                disp.append(d)
                continue
            try:
                flat = to_flat_address(d[1:], n)
            except IndexError:
                raise DecodeError("display %r is not an address of the target type" % (d,))
            disp.append((2,) if flat[0] == 2 else (1, base + flat[1]) + flat[2:])
        roots = [_arg_root(d, base, ctx) for d in disp]
        sp = [-1 if r else s for r, s in zip(roots, q.sparent)]
        q = Augmentation(disp, sp, q.dparent)
    body = _dec_body(q, ctx)
    for name, dom in reversed(binders):
        body = Abs(name, dom, body)
    return body


def _arg_root(d, base, ctx):
    if d[0] != 1 or d[1] <= base:
        return False
    return d[2:] == (2,) * len(split_type(ctx.bindings[d[1] - 1][1]))


def _dec_body(q, ctx):
    roots = q.dynamic_roots()
    if len(roots) != 1:
        raise DecodeError("expected one initial event at base type")
    (e0,) = roots
    if q.display[e0] != (2,):
        raise DecodeError("initial event must be displayed at the result root")
    kids = q.dynamic_children()[e0]
    if len(kids) != 1:
        raise DecodeError("initial event must have exactly one answer")
    (e1,) = kids
    head = q.display[e1]
    if len(head) < 2 or head[0] != 1 or not 1 <= head[1] <= len(ctx):
        raise DecodeError("answer must be displayed in the context")
    i = head[1]
    name, ty = ctx.bindings[i - 1]
    domains = split_type(ty)
    m = len(domains)
    if head[2:] != (2,) * m or q.sparent[e1] >= 0:
        raise DecodeError("answer must be displayed at the root of a context component")
    if q.sparent[e0] >= 0:
        raise DecodeError("initial event has a static parent")
    # events statically below the head belong to the arguments
    ch = q.static_children()
    below = set()
    stack = list(ch[e1])
    while stack:
        e = stack.pop()
        below.add(e)
        stack.extend(ch[e])
    keep = [e for e in range(len(q)) if e not in (e0, e1)]
    disp = []
    for e in keep:
        d = q.display[e]
        if e in below:
            flat = to_flat_address(d[2:], m)
            if flat[0] != 1:
                raise DecodeError("argument event displayed at the head root")
            d = (2, flat[1]) + flat[2:]
        disp.append(d)
    new = {e: k for k, e in enumerate(keep)}
    sp = [new.get(q.sparent[e], -1) for e in keep]
    dp = []
    for e in keep:
        p = q.dparent[e]
        if p == e0:
            raise DecodeError("initial event has more than one successor")
        dp.append(-1 if p == e1 else new[p])
    for e in keep:
        if q.sparent[e] == e1 and q.dparent[e] != e1:
            raise DecodeError("argument root not justified by the head")
    args = _dec_seq(Augmentation(disp, sp, dp), ctx, domains)
    return Var(name, args)


def _dyn_trees(q):
    ch = q.dynamic_children()
    trees = []
    for r in q.dynamic_roots():
        events, stack = [], [r]
        while stack:
            e = stack.pop()
            events.append(e)
            stack.extend(ch[e])
        trees.append((r, events))
    return trees


def _dec_seq(q, ctx, domains):
    groups = [[] for _ in domains]
    for r, events in _dyn_trees(q):
        d = q.display[r]
        if len(d) < 2 or d[0] != 2 or not 1 <= d[1] <= len(domains):
            raise DecodeError("initial event outside the argument components")
        for e in events:
            s = q.sparent[e]
            if s >= 0 and s not in events:
                raise DecodeError("static edge between different arguments")
        groups[d[1] - 1].append(events)
    bags = []
    for j, (ty, trees) in enumerate(zip(domains, groups), 1):
        elems = []
        for events in trees:
            sub, _ = q.restrict(events)
            disp = []
            for d in sub.display:
                if d[0] == 2:
                    if d[1] != j:
                        raise DecodeError("argument mixes components")
                    d = (2,) + d[2:]
                disp.append(d)
            elems.append(_dec_term(Augmentation(disp, sub.sparent, sub.dparent), ctx, ty))
        bags.append(Bag(elems))
    return tuple(bags)


def decode_bag(q, ctx, ty):
    ctx = _as_context(ctx)
    q = _as_aug(q)
    elems = []
    for _, events in _dyn_trees(q):
        sub, _ = q.restrict(events)
        elems.append(_dec_term(sub, ctx, ty))
    return Bag(elems)


def decode_seq(q, ctx, types):
    return _dec_seq(_as_aug(q), _as_context(ctx), tuple(types))


def decode(q, ctx, ty, kind="term"):
    """Dispatch on ``kind`` (``term``, ``bag`` or ``seq``)."""
    if kind == "term":
        return decode_term(q, ctx, ty)
    if kind == "bag":
        return decode_bag(q, ctx, ty)
    if kind == "seq":
        return decode_seq(q, ctx, ty)
    raise ValueError("unknown kind %r" % kind)


# ---------------------------------------------------------------------------
# Exhaustive enumeration of normal terms

def enumerate_normal_terms(ctx, ty, max_size):
    """All normal terms of type ``ty`` in ``ctx`` with size at most ``max_size``.

    Binders are named ``x<k>`` after their depth, so distinct results are
    never alpha-equivalent.
    """
    ctx = _as_context(ctx)
    out = []
    for n in range(1, max_size + 1):
        out.extend(_terms(ctx.bindings, ty, n))
    return out


@lru_cache(maxsize=None)
def _terms(bindings, ty, n):
    domains = split_type(ty)
    if domains:
        names = {b for b, _ in bindings}
        out = []
        binders = []
        for dom in domains:
            name = fresh_name("x%d" % (len(bindings) + len(binders) + 1),
                              names | {b for b, _ in binders})
            binders.append((name, dom))
        if n <= len(domains):
            return ()
        for body in _terms(bindings + tuple(binders), _base_type(), n - len(domains)):
            t = body
            for name, dom in reversed(binders):
                t = Abs(name, dom, t)
            out.append(t)
        return tuple(out)
    out = []
    for name, vty in bindings:
        for seq in _seqs(bindings, tuple(split_type(vty)), n - 1):
            out.append(Var(name, seq))
    return tuple(out)


def _base_type():
    from .syntax import O
    return O


@lru_cache(maxsize=None)
def _seqs(bindings, domains, n):
    if not domains:
        return ((),) if n == 0 else ()
    out = []
    for k in range(n + 1):
        for b in _bags(bindings, domains[0], k):
            for rest in _seqs(bindings, domains[1:], n - k):
                out.append((b,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _bags(bindings, ty, n):
    """Bags of total size ``n``, as multisets (each listed once)."""
    pool = []
    for k in range(1, n + 1):
        pool.extend((k, t) for t in _terms(bindings, ty, k))
    out = []

    def go(start, left, acc):
        if left == 0:
            out.append(Bag(acc))
            return
        for i in range(start, len(pool)):
            k, t = pool[i]
            if k <= left:
                go(i, left - k, acc + [t])

    go(0, n, [])
    return tuple(out)
