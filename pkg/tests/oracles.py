"""Brute-force reference implementations used only by the tests."""

import itertools

from resource_games.syntax import Abs, App, Bag, Sum, Var, apply_bags, free_vars


def _fresh(name, avoid):
    k = 0
    while "%s_%d" % (name, k) in avoid:
        k += 1
    return "%s_%d" % (name, k)


def _rename_free(t, old, new):
    if isinstance(t, Bag):
        return Bag(_rename_free(e, old, new) for e in t.elements)
    if isinstance(t, Var):
        return Var(new if t.name == old else t.name,
                   tuple(_rename_free(b, old, new) for b in t.args))
    if isinstance(t, Abs):
        if t.binder == old:
            return t
        return Abs(t.binder, t.binder_type, _rename_free(t.body, old, new))
    return App(_rename_free(t.fun, old, new), _rename_free(t.arg, old, new))


def _avoid_capture(t, avoid):
    """Rename every binder of ``t`` that belongs to ``avoid``."""
    if isinstance(t, Bag):
        return Bag(_avoid_capture(e, avoid) for e in t.elements)
    if isinstance(t, Var):
        return Var(t.name, tuple(_avoid_capture(b, avoid) for b in t.args))
    if isinstance(t, Abs):
        body = _avoid_capture(t.body, avoid)
        binder = t.binder
        if binder in avoid:
            new = _fresh(binder, avoid | free_vars(body) | {binder})
            body = _rename_free(body, binder, new)
            binder = new
        return Abs(binder, t.binder_type, body)
    return App(_avoid_capture(t.fun, avoid), _avoid_capture(t.arg, avoid))


def _count(t, x):
    if isinstance(t, Bag):
        return sum(_count(e, x) for e in t.elements)
    if isinstance(t, Var):
        return (t.name == x) + sum(_count(b, x) for b in t.args)
    if isinstance(t, Abs):
        return 0 if t.binder == x else _count(t.body, x)
    return _count(t.fun, x) + _count(t.arg, x)


def substitute_by_assignment(t, x, elems):
    """``t{elems/x}``: one summand per bijection from free occurrences of ``x`` to bag positions."""
    elems = list(elems)
    avoid = set()
    for e in elems:
        avoid |= free_vars(e)
    t = _avoid_capture(t, avoid)
    n = _count(t, x)
    out = Sum()
    if n != len(elems):
        return out
    for perm in itertools.permutations(range(n)):
        counter = iter(perm)
        out.add(_replace(t, x, elems, counter), 1)
    return out


def _replace(t, x, elems, counter):
    if isinstance(t, Bag):
        return Bag(_replace(e, x, elems, counter) for e in t.elements)
    if isinstance(t, Var):
        if t.name == x:
            u = elems[next(counter)]
            return apply_bags(u, [_replace(b, x, elems, counter) for b in t.args])
        return Var(t.name, tuple(_replace(b, x, elems, counter) for b in t.args))
    if isinstance(t, Abs):
        if t.binder == x:
            return t
        return Abs(t.binder, t.binder_type, _replace(t.body, x, elems, counter))
    return App(_replace(t.fun, x, elems, counter), _replace(t.arg, x, elems, counter))


def all_assignments(n, k):
    """Every function ``{0..n-1} -> {0..k-1}`` as a tuple."""
    return list(itertools.product(range(k), repeat=n))


def brute_symmetries(x, y):
    """Display- and order-preserving bijections ``x -> y``, by trying every permutation."""
    if len(x) != len(y):
        return []
    out = []
    for perm in itertools.permutations(range(len(x))):
        if all(x.display[e] == y.display[perm[e]] for e in range(len(x))) and all(
                (x.sparent[e] < 0 and y.sparent[perm[e]] < 0)
                or (x.sparent[e] >= 0 and y.sparent[perm[e]] == perm[x.sparent[e]])
                for e in range(len(x))):
            out.append(perm)
    return out


def brute_isomorphic(q, p):
    """Whether some permutation maps ``q`` onto ``p`` preserving displays and both orders."""
    if len(q) != len(p):
        return False
    for perm in brute_symmetries(q, p):
        if all((q.dparent[e] < 0 and p.dparent[perm[e]] < 0)
               or (q.dparent[e] >= 0 and p.dparent[perm[e]] == perm[q.dparent[e]])
               for e in range(len(q))):
            return True
    return False
