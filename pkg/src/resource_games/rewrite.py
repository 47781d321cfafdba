"""Resource substitution, one-step reduction and normalization.

Substituting a bag for a variable distributes the bag elements over the
occurrences of the variable in every possible way; each way is one
partitioning of the bag.  A partitioning that leaves an occurrence without
a resource, or a resource without an occurrence, contributes 0, so the
recursion only enumerates splits whose part sizes match the occurrence
counts of the subterms.  The resulting sum is the same.
"""

import itertools

from .syntax import Abs, App, Bag, Sum, Var, apply_bags, free_vars, fresh_name

__all__ = [
    "NoRedex", "FuelExhausted", "enumerate_partitionings", "occurrences",
    "substitute_term", "substitute_bag", "substitute_seq", "rename",
    "reduce_step", "normalize", "STRATEGIES", "one_step_reducts",
]

DEFAULT_FUEL = 10 ** 6


class NoRedex(Exception):
    pass


class FuelExhausted(Exception):
    def __init__(self, steps, pending):
        super().__init__("no normal form after %d steps" % steps)
        self.steps = steps
        self.pending = pending


def enumerate_partitionings(b, k):
    """All ``k ** len(b)`` splittings of ``b`` into ``k`` bags.

    Each index assignment gives one tuple, so a bag with repeated
    elements yields repeated tuples.
    """
    if k < 1:
        raise ValueError("k must be positive")
    elems = b.elements if isinstance(b, Bag) else tuple(b)
    out = []
    for assignment in itertools.product(range(k), repeat=len(elems)):
        parts = [[] for _ in range(k)]
        for elem, block in zip(elems, assignment):
            parts[block].append(elem)
        out.append(tuple(Bag(p) for p in parts))
    return out


def occurrences(t, x):
    """Number of free occurrences of ``x`` in a term, bag or sequence."""
    if isinstance(t, Bag):
        return sum(occurrences(e, x) for e in t.elements)
    if isinstance(t, tuple):
        return sum(occurrences(b, x) for b in t)
    if isinstance(t, Var):
        return (t.name == x) + sum(occurrences(b, x) for b in t.args)
    if isinstance(t, Abs):
        return 0 if t.binder == x else occurrences(t.body, x)
    return occurrences(t.fun, x) + occurrences(t.arg, x)


def _splits(elems, counts):
    """Distribute ``elems`` so that part ``i`` receives ``counts[i]`` of them.

    Yields one tuple of parts per index assignment with those block sizes.
    """
    if not counts:
        if not elems:
            yield ()
        return
    first, rest = counts[0], counts[1:]
    indices = range(len(elems))
    for chosen in itertools.combinations(indices, first):
        picked = tuple(elems[i] for i in chosen)
        chosen = set(chosen)
        remaining = tuple(elems[i] for i in indices if i not in chosen)
        for tail in _splits(remaining, rest):
            yield (picked,) + tail


def _all_names(t, out):
    if isinstance(t, Bag):
        for e in t.elements:
            _all_names(e, out)
    elif isinstance(t, Var):
        out.add(t.name)
        for b in t.args:
            _all_names(b, out)
    elif isinstance(t, Abs):
        out.add(t.binder)
        _all_names(t.body, out)
    else:
        _all_names(t.fun, out)
        _all_names(t.arg, out)
    return out


def rename(t, old, new):
    """Rename free occurrences of ``old`` to ``new`` (``new`` must be unused in ``t``)."""
    if isinstance(t, Bag):
        return Bag(rename(e, old, new) for e in t.elements)
    if isinstance(t, Var):
        name = new if t.name == old else t.name
        return Var(name, tuple(rename(b, old, new) for b in t.args))
    if isinstance(t, Abs):
        if t.binder == old:
            return t
        return Abs(t.binder, t.binder_type, rename(t.body, old, new))
    return App(rename(t.fun, old, new), rename(t.arg, old, new))


def substitute_term(t, x, b):
    """``t{b/x}`` as a sum of terms."""
    elems = tuple(b.elements if isinstance(b, Bag) else b)
    if occurrences(t, x) != len(elems):
        return Sum()
    return _subst(t, x, elems, _fv(elems))


def substitute_bag(bag, x, b):
    elems = tuple(b.elements if isinstance(b, Bag) else b)
    if occurrences(bag, x) != len(elems):
        return Sum()
    return _subst_bag(bag, x, elems, _fv(elems))


def substitute_seq(seq, x, b):
    elems = tuple(b.elements if isinstance(b, Bag) else b)
    seq = tuple(seq)
    if occurrences(seq, x) != len(elems):
        return Sum()
    return _subst_seq(seq, x, elems, _fv(elems))


def _fv(elems):
    out = set()
    for e in elems:
        out |= free_vars(e)
    return frozenset(out)


def _subst(t, x, elems, fv):
    if not elems:
        return Sum.of(t)
    if isinstance(t, Var):
        head = 1 if t.name == x else 0
        counts = [head] + [occurrences(a, x) for a in t.args]
        out = Sum()
        for parts in _splits(elems, counts):
            new_head = parts[0][0] if head else Var(t.name)
            for seq, c in _subst_seq(t.args, x, parts[1:], fv, split=False).items():
                out.add(apply_bags(new_head, seq), c)
        return out
    if isinstance(t, Abs):
        binder, body = t.binder, t.body
        if binder in fv:
            avoid = fv | _all_names(body, set()) | {x}
            binder = fresh_name(binder, avoid)
            body = rename(body, t.binder, binder)
        return Sum((Abs(binder, t.binder_type, s), c)
                   for s, c in _subst(body, x, elems, fv).items())
    out = Sum()
    counts = [occurrences(t.fun, x), occurrences(t.arg, x)]
    for left, right in _splits(elems, counts):
        funs = _subst(t.fun, x, left, fv)
        if not funs:
            continue
        for bag, cb in _subst_bag(t.arg, x, right, fv).items():
            for f, cf in funs.items():
                out.add(apply_bags(f, [bag]), cf * cb)
    return out


def _subst_bag(bag, x, elems, fv):
    if not elems:
        return Sum.of(bag)
    counts = [occurrences(e, x) for e in bag.elements]
    out = Sum()
    for parts in _splits(elems, counts):
        for combo, c in _product([_subst(e, x, p, fv) for e, p in zip(bag.elements, parts)]):
            out.add(Bag(combo), c)
    return out


def _subst_seq(seq, x, elems, fv, split=True):
    """Substitute into each bag of ``seq``.

    With ``split`` the resources in ``elems`` are distributed first;
    otherwise ``elems`` is already a tuple of per-bag parts.
    """
    if split:
        counts = [occurrences(b, x) for b in seq]
        out = Sum()
        for parts in _splits(elems, counts):
            out += _subst_seq(seq, x, parts, fv, split=False)
        return out
    out = Sum()
    for combo, c in _product([_subst_bag(b, x, p, fv) for b, p in zip(seq, elems)]):
        out.add(tuple(combo), c)
    return out


def _product(sums):
    """Cartesian product of sums: yields (tuple of items, coefficient)."""
    if any(not s for s in sums):
        return
    for picks in itertools.product(*(list(s.items()) for s in sums)):
        coeff = 1
        for _, c in picks:
            coeff *= c
        yield tuple(item for item, _ in picks), coeff


# ---------------------------------------------------------------------------
# Reduction

def _contract(t):
    lam = t.fun
    return substitute_term(lam.body, lam.binder, t.arg)


def _map(s, f):
    out = Sum()
    for item, c in s.items():
        out.add(f(item), c)
    return out


def _step_bag(bag, step, reverse):
    elems = bag.elements
    order = range(len(elems) - 1, -1, -1) if reverse else range(len(elems))
    for i in order:
        r = step(elems[i])
        if r is not None:
            others = elems[:i] + elems[i + 1:]
            return _map(r, lambda e: Bag(others + (e,)))
    return None


def _step_args(t, step, reverse):
    args = t.args
    order = range(len(args) - 1, -1, -1) if reverse else range(len(args))
    for j in order:
        r = _step_bag(args[j], step, reverse)
        if r is not None:
            return _map(r, lambda b: Var(t.name, args[:j] + (b,) + args[j + 1:]))
    return None


def _step_outer(t):
    """Contract the leftmost-outermost redex, or return None."""
    if isinstance(t, App):
        if isinstance(t.fun, Abs):
            return _contract(t)
        r = _step_outer(t.fun)
        if r is not None:
            return _map(r, lambda f: apply_bags(f, [t.arg]))
        r = _step_bag(t.arg, _step_outer, False)
        if r is not None:
            return _map(r, lambda b: App(t.fun, b))
        return None
    if isinstance(t, Abs):
        r = _step_outer(t.body)
        if r is None:
            return None
        return _map(r, lambda s: Abs(t.binder, t.binder_type, s))
    return _step_args(t, _step_outer, False)


def _step_inner(t):
    """Contract the rightmost-innermost redex, or return None."""
    if isinstance(t, App):
        r = _step_bag(t.arg, _step_inner, True)
        if r is not None:
            return _map(r, lambda b: apply_bags(t.fun, [b]))
        r = _step_inner(t.fun)
        if r is not None:
            return _map(r, lambda f: apply_bags(f, [t.arg]))
        if isinstance(t.fun, Abs):
            return _contract(t)
        return None
    if isinstance(t, Abs):
        r = _step_inner(t.body)
        if r is None:
            return None
        return _map(r, lambda s: Abs(t.binder, t.binder_type, s))
    return _step_args(t, _step_inner, True)


STRATEGIES = {
    "leftmost-outermost": _step_outer,
    "rightmost-innermost": _step_inner,
}


def reduce_step(t, strategy="leftmost-outermost"):
    """Contract one redex of ``t``; raises :class:`NoRedex` on normal terms."""
    r = STRATEGIES[strategy](t)
    if r is None:
        raise NoRedex(str(t))
    return r


def normalize(s, fuel=DEFAULT_FUEL, strategy="leftmost-outermost"):
    """Normal form of a term or sum of terms.

    ``fuel`` bounds the number of contraction steps; running out raises
    :class:`FuelExhausted`.
    """
    step = STRATEGIES[strategy]
    pending = Sum.of(s) if not isinstance(s, Sum) else Sum(s.terms)
    done = Sum()
    steps = 0
    while pending:
        t, c = next(iter(pending.terms.items()))
        del pending.terms[t]
        r = step(t)
        if r is None:
            done.add(t, c)
            continue
        steps += 1
        if steps > fuel:
            pending.add(t, c)
            raise FuelExhausted(steps - 1, pending)
        for t2, c2 in r.items():
            pending.add(t2, c * c2)
    return done


def one_step_reducts(t):
    """Every result of contracting exactly one redex of ``t``, as a list of sums."""
    out = []
    if isinstance(t, App):
        if isinstance(t.fun, Abs):
            out.append(_contract(t))
        for r in one_step_reducts(t.fun):
            out.append(_map(r, lambda f: apply_bags(f, [t.arg])))
        for r in _bag_reducts(t.arg):
            out.append(_map(r, lambda b: apply_bags(t.fun, [b])))
    elif isinstance(t, Abs):
        for r in one_step_reducts(t.body):
            out.append(_map(r, lambda s: Abs(t.binder, t.binder_type, s)))
    else:
        for j, b in enumerate(t.args):
            for r in _bag_reducts(b):
                out.append(_map(r, lambda nb, j=j: Var(t.name, t.args[:j] + (nb,) + t.args[j + 1:])))
    return out


def _bag_reducts(bag):
    out = []
    elems = bag.elements
    for i, e in enumerate(elems):
        others = elems[:i] + elems[i + 1:]
        for r in one_step_reducts(e):
            out.append(_map(r, lambda x, others=others: Bag(others + (x,))))
    return out
