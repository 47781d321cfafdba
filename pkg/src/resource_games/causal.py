"""Configurations, symmetries, positions and augmentations.

Events are the integers ``0 .. n-1``.  A configuration stores, per event,
its display (an arena address) and its static parent (``-1`` for roots).
An augmentation adds a dynamic parent per event.

Canonical keys are nested tuples.  For a configuration each event is coded
as ``(display, sorted child codes)`` along the static forest.  For an
augmentation the code runs along the dynamic forest and records, instead
of the static parent, how many dynamic steps up it sits; rule-abiding
guarantees the static parent is on the dynamic ancestor chain, so the
offset determines it.
"""

import itertools
import json
import math
from collections import Counter

from .arena import NEG, POS

__all__ = [
    "ValidityError", "Configuration", "Augmentation", "Isogmentation",
    "validate_configuration", "validate_augmentation", "position_key",
    "augmentation_key", "canonicalize", "from_key", "configuration_from_key",
    "enumerate_symmetries", "sym_count", "sym_count_formula", "tensor_config",
    "hom_pair", "union_star", "splittings", "splitting_count",
    "enumerate_pointed_isogmentations", "augmentation_to_json",
    "augmentation_from_json", "augmentation_to_dot", "EMPTY_KEY",
    "enumerate_positions",
]


class ValidityError(ValueError):
    """``condition`` names the violated invariant, ``witness`` the events involved."""

    def __init__(self, condition, witness=()):
        super().__init__("%s violated at events %s" % (condition, list(witness)))
        self.condition = condition
        self.witness = tuple(witness)


class Configuration:
    __slots__ = ("display", "sparent", "_children", "_key")

    def __init__(self, display, sparent):
        self.display = tuple(tuple(d) for d in display)
        self.sparent = tuple(sparent)
        if len(self.display) != len(self.sparent):
            raise ValueError("display and parent tables differ in length")
        self._children = None
        self._key = None

    def __len__(self):
        return len(self.display)

    def __repr__(self):
        return "%s(%r, %r)" % (type(self).__name__, self.display, self.sparent)

    def static_children(self):
        if self._children is None:
            self._children = _children_of(self.sparent)
        return self._children

    def static_roots(self):
        return [e for e, p in enumerate(self.sparent) if p < 0]

    @property
    def position(self):
        if self._key is None:
            self._key = position_key(self)
        return self._key

    def configuration(self):
        return Configuration(self.display, self.sparent)

    def restrict(self, keep, readdress=None):
        """Sub-structure on the events in ``keep`` (which must be down-closed).

        Returns the restricted object and the list mapping new ids to old ids.
        """
        old = sorted(keep)
        new = {e: i for i, e in enumerate(old)}
        disp = [self.display[e] for e in old]
        if readdress is not None:
            disp = [readdress(d) for d in disp]
        sp = [new.get(self.sparent[e], -1) for e in old]
        if isinstance(self, Augmentation):
            dp = [_nearest_kept(self.dparent, e, new) for e in old]
            return Augmentation(disp, sp, dp), old
        return Configuration(disp, sp), old

    def relabel(self, perm):
        """Rename event ``e`` to ``perm[e]``."""
        n = len(self)
        disp = [None] * n
        sp = [None] * n
        for e in range(n):
            disp[perm[e]] = self.display[e]
            sp[perm[e]] = -1 if self.sparent[e] < 0 else perm[self.sparent[e]]
        if isinstance(self, Augmentation):
            dp = [None] * n
            for e in range(n):
                dp[perm[e]] = -1 if self.dparent[e] < 0 else perm[self.dparent[e]]
            return Augmentation(disp, sp, dp)
        return Configuration(disp, sp)


def _nearest_kept(parent, e, kept):
    p = parent[e]
    while p >= 0 and p not in kept:
        p = parent[p]
    return kept.get(p, -1)


def _children_of(parent):
    ch = [[] for _ in parent]
    for e, p in enumerate(parent):
        if p >= 0:
            ch[p].append(e)
    return ch


class Augmentation(Configuration):
    __slots__ = ("dparent", "_dchildren", "_akey")

    def __init__(self, display, sparent, dparent):
        super().__init__(display, sparent)
        self.dparent = tuple(dparent)
        if len(self.dparent) != len(self.display):
            raise ValueError("dynamic parent table has the wrong length")
        self._dchildren = None
        self._akey = None

    def dynamic_children(self):
        if self._dchildren is None:
            self._dchildren = _children_of(self.dparent)
        return self._dchildren

    def dynamic_roots(self):
        return [e for e, p in enumerate(self.dparent) if p < 0]

    @property
    def key(self):
        if self._akey is None:
            self._akey = augmentation_key(self)
        return self._akey

    @property
    def is_pointed(self):
        return len(self.dynamic_roots()) == 1


# ---------------------------------------------------------------------------
# Validity

def _check_forest(parent, name):
    n = len(parent)
    for e, p in enumerate(parent):
        if p >= n or p < -1:
            raise ValidityError(name + " forest", [e])
    state = [0] * n
    for e in range(n):
        path = []
        while e >= 0 and state[e] == 0:
            state[e] = 1
            path.append(e)
            e = parent[e]
        if e >= 0 and state[e] == 1:
            raise ValidityError(name + " acyclicity", [e])
        for f in path:
            state[f] = 2


def validate_configuration(arena, x):
    """Raise :class:`ValidityError` unless ``x`` is a configuration of ``arena``."""
    _check_forest(x.sparent, "static")
    for e, (d, p) in enumerate(zip(x.display, x.sparent)):
        if d not in arena:
            raise ValidityError("display", [e])
        if (p < 0) != (arena.parent[d] is None):
            raise ValidityError("minimality-respecting", [e])
        if p >= 0 and x.display[p] != arena.parent[d]:
            raise ValidityError("causality-preserving", [p, e])
    return True


def validate_augmentation(arena, q):
    """Check the configuration and the five conditions on the dynamic order."""
    validate_configuration(arena, q)
    _check_forest(q.dparent, "dynamic")
    pol = [arena.polarity[d] for d in q.display]
    dp = q.dparent
    for e, p in enumerate(q.sparent):
        a = dp[e]
        while a >= 0 and a != p:
            a = dp[a]
        if a != p:
            raise ValidityError("rule-abiding", [p, e])
    for e, p in enumerate(dp):
        if p >= 0 and (pol[p] == POS or pol[e] == NEG) and q.sparent[e] != p:
            raise ValidityError("courteous", [p, e])
    for e, ch in enumerate(q.dynamic_children()):
        pos = [c for c in ch if pol[c] == POS]
        if pol[e] == NEG and len(pos) > 1:
            raise ValidityError("deterministic", [e] + pos)
        if not ch and pol[e] != POS:
            raise ValidityError("+-covered", [e])
        if dp[e] < 0 and pol[e] != NEG:
            raise ValidityError("negative", [e])
    return True


# ---------------------------------------------------------------------------
# Canonical forms

def _static_code(x, e, ch):
    return (x.display[e], tuple(sorted(_static_code(x, c, ch) for c in ch[e])))


def position_key(x):
    """Canonical key of the symmetry class of ``x`` (dynamic order ignored)."""
    ch = x.static_children()
    return tuple(sorted(_static_code(x, r, ch) for r in x.static_roots()))


def augmentation_key(q):
    ch = q.dynamic_children()
    depth = [0] * len(q)
    order = []
    stack = [(r, 0) for r in q.dynamic_roots()]
    while stack:
        e, d = stack.pop()
        depth[e] = d
        order.append(e)
        stack.extend((c, d + 1) for c in ch[e])
    code = [None] * len(q)
    for e in reversed(order):
        p = q.sparent[e]
        off = depth[e] - depth[p] if p >= 0 else 0
        code[e] = (q.display[e], off, tuple(sorted(code[c] for c in ch[e])))
    return tuple(sorted(code[r] for r in q.dynamic_roots()))


EMPTY_KEY = ()


def from_key(key):
    """The representative augmentation of a canonical key (preorder numbering)."""
    disp, sp, dp = [], [], []

    def walk(code, chain):
        d, off, kids = code
        e = len(disp)
        disp.append(d)
        dp.append(chain[-1] if chain else -1)
        sp.append(chain[-off] if off else -1)
        chain.append(e)
        for k in kids:
            walk(k, chain)
        chain.pop()

    for root in key:
        walk(root, [])
    return Augmentation(disp, sp, dp)


def configuration_from_key(key):
    disp, sp = [], []

    def walk(code, parent):
        e = len(disp)
        disp.append(code[0])
        sp.append(parent)
        for k in code[1]:
            walk(k, e)

    for root in key:
        walk(root, -1)
    return Configuration(disp, sp)


class Isogmentation:
    """An isomorphism class of augmentations, identified by its canonical key."""

    __slots__ = ("key", "_rep")

    def __init__(self, key, representative=None):
        self.key = key
        self._rep = representative

    @property
    def representative(self):
        if self._rep is None:
            self._rep = from_key(self.key)
        return self._rep

    @property
    def is_pointed(self):
        return len(self.key) == 1

    def __len__(self):
        return _key_size(self.key)

    def __eq__(self, other):
        return isinstance(other, Isogmentation) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "Isogmentation(%d events, %d roots)" % (len(self), len(self.key))


def _key_size(key):
    return sum(1 + _key_size(c[-1]) for c in key)


def canonicalize(q):
    return Isogmentation(q.key, from_key(q.key))


# ---------------------------------------------------------------------------
# Symmetries

def _matchings(x, y, xcode, ycode, xch, ych):
    """Every isomorphism from the static forest of ``x`` onto that of ``y``.

    Each is a tuple of ``(e, f)`` pairs.  Matchings of a pair of subtrees
    are computed once and combined by products.
    """
    memo = {}

    def tree(e, f):
        hit = memo.get((e, f))
        if hit is None:
            hit = memo[e, f] = [((e, f),) + m for m in forest(xch[e], ych[f])]
        return hit

    def forest(xs, ys):
        groups = {}
        for e in xs:
            groups.setdefault(xcode[e], ([], []))[0].append(e)
        for f in ys:
            if ycode[f] not in groups:
                return []
            groups[ycode[f]][1].append(f)
        per_group = []
        for gx, gy in groups.values():
            if len(gx) != len(gy):
                return []
            opts = []
            for perm in itertools.permutations(gy):
                for combo in itertools.product(*[tree(e, f) for e, f in zip(gx, perm)]):
                    opts.append(tuple(itertools.chain.from_iterable(combo)))
            per_group.append(opts)
        return [tuple(itertools.chain.from_iterable(c)) for c in itertools.product(*per_group)]

    return forest(x.static_roots(), y.static_roots())


def _codes(x):
    ch = x.static_children()
    code = [None] * len(x)
    for r in x.static_roots():
        _fill_codes(x, r, ch, code)
    return code, ch


def _fill_codes(x, e, ch, code):
    for c in ch[e]:
        _fill_codes(x, c, ch, code)
    code[e] = (x.display[e], tuple(sorted(code[c] for c in ch[e])))


def enumerate_symmetries(x, y):
    """All display-preserving order-isomorphisms ``x -> y``, as tuples ``s[e] = f``."""
    if len(x) != len(y):
        return []
    xcode, xch = _codes(x)
    ycode, ych = _codes(y)
    out = []
    for m in _matchings(x, y, xcode, ycode, xch, ych):
        s = [0] * len(x)
        for e, f in m:
            s[e] = f
        out.append(tuple(s))
    return out


def _forest_sym(codes):
    total = 1
    for code, k in Counter(codes).items():
        total *= math.factorial(k) * _forest_sym(code[1]) ** k
    return total


def sym_count_formula(pos):
    """Size of the symmetry group of a position, from its key alone."""
    if isinstance(pos, Configuration):
        pos = pos.position
    return _forest_sym(pos)


def sym_count(pos, check=True):
    """``|Sym x|`` by counting the group, cross-checked against the formula."""
    x = configuration_from_key(pos) if not isinstance(pos, Configuration) else pos
    n = len(enumerate_symmetries(x, x))
    if check and n != sym_count_formula(x):
        raise AssertionError("symmetry count disagrees with the closed form")
    return n


# ---------------------------------------------------------------------------
# Operations on configurations

def _prefixed(x, tag):
    return [(tag,) + d for d in x.display]


def _join(x, y, xdisp, ydisp):
    n = len(x)
    sp = list(x.sparent) + [p + n if p >= 0 else -1 for p in y.sparent]
    if isinstance(x, Augmentation) and isinstance(y, Augmentation):
        dp = list(x.dparent) + [p + n if p >= 0 else -1 for p in y.dparent]
        return Augmentation(xdisp + ydisp, sp, dp)
    return Configuration(xdisp + ydisp, sp)


def tensor_config(x, y):
    """``x ⊗ y`` on ``A ⊗ B`` (or on ``A ⊢ B``: the addresses agree)."""
    return _join(x, y, _prefixed(x, 1), _prefixed(y, 2))


hom_pair = tensor_config


def union_star(x, y):
    """``x * y``: disjoint union on the same arena."""
    return _join(x, y, list(x.display), list(y.display))


def _tree_events(x, root, ch):
    out, stack = [], [root]
    while stack:
        e = stack.pop()
        out.append(e)
        stack.extend(ch[e])
    return out


def splittings(x):
    """All ways to write ``x = y * z`` with ``y``, ``z`` sub-configurations.

    Both halves must be down-closed with down-closed complement, so they are
    unions of whole static trees.  Yields pairs of configurations.
    """
    ch = x.static_children()
    trees = [_tree_events(x, r, ch) for r in x.static_roots()]
    for mask in itertools.product((0, 1), repeat=len(trees)):
        left = [e for t, m in zip(trees, mask) if m == 0 for e in t]
        right = [e for t, m in zip(trees, mask) if m == 1 for e in t]
        yield x.restrict(left)[0], x.restrict(right)[0]


def splitting_count(x, ypos, zpos):
    """``|x ◁ y, z|``: splittings of ``x`` whose halves lie in positions ``ypos``, ``zpos``."""
    if isinstance(ypos, Configuration):
        ypos = ypos.position
    if isinstance(zpos, Configuration):
        zpos = zpos.position
    return sum(1 for y, z in splittings(x) if y.position == ypos and z.position == zpos)


# ---------------------------------------------------------------------------
# Exhaustive enumeration

def enumerate_pointed_isogmentations(arena, max_events):
    """Canonical keys of all pointed augmentations on ``arena`` with at most ``max_events`` events.

    Dynamic forests are generated first: a negative event has exactly one
    dynamic child, positive and pointed at a dynamic ancestor (or an arena
    root); a positive event has a multiset of negative children, each a
    static child.  Every output is re-validated by the caller's tests.
    """
    out = []
    for r in arena.roots():
        if arena.polarity[r] == NEG:
            out.extend(_neg_codes(arena, r, (), max_events))
    return sorted(set((c,) for c, _ in out), key=lambda k: (_key_size(k), repr(k)))


def _neg_codes(arena, move, chain, budget):
    """Codes of dynamic subtrees rooted at a negative event displayed ``move``.

    ``chain`` lists the displays of the dynamic ancestors (outermost first).
    Returns (code, size) pairs with size at most ``budget``.
    """
    if budget < 2:
        return []
    chain = chain + (move,)
    out = []
    for m, off in _positive_targets(arena, chain):
        for kids, used in _pos_children(arena, m, chain + (m,), budget - 2):
            code = (m, off, kids)
            out.append((code, used + 1))
    # a negative event below a positive one is its static child
    off = 0 if arena.parent[move] is None else 1
    return [((move, off, (code,)), size + 1) for code, size in out]


def _positive_targets(arena, chain):
    """(positive move, offset) pairs available as the unique child of chain[-1]."""
    out = []
    for m in arena.nodes:
        if arena.polarity[m] != POS:
            continue
        p = arena.parent[m]
        if p is None:
            out.append((m, 0))
            continue
        for k in range(1, len(chain) + 1):
            if chain[-k] == p:
                out.append((m, k))
    return out


def _pos_children(arena, move, chain, budget):
    """Multisets of negative subtrees below a positive event, as sorted code tuples."""
    options = []
    for c in arena.children(move):
        options.extend(_neg_codes(arena, c, chain, budget))
    options.sort(key=lambda cs: repr(cs[0]))
    results = [((), 0)]

    def extend(start, chosen, used):
        for i in range(start, len(options)):
            code, size = options[i]
            if used + size <= budget:
                picked = chosen + (code,)
                results.append((tuple(sorted(picked)), used + size))
                extend(i, picked, used + size)

    extend(0, (), 0)
    return results


# ---------------------------------------------------------------------------
# Interchange formats

def augmentation_to_json(q, arena_text=""):
    """Plain dict following the augmentation exchange schema."""
    return {
        "arena": arena_text,
        "events": [
            {"id": e, "display": list(q.display[e]),
             "staticParent": None if q.sparent[e] < 0 else q.sparent[e],
             "dynParent": None if q.dparent[e] < 0 else q.dparent[e]}
            for e in range(len(q))
        ],
    }


def augmentation_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    events = data["events"]
    ids = {ev["id"]: i for i, ev in enumerate(events)}
    if len(ids) != len(events):
        raise ValueError("duplicate event ids")

    def ref(v):
        if v is None:
            return -1
        if v not in ids:
            raise ValueError("unknown event id %r" % (v,))
        return ids[v]

    return Augmentation([tuple(ev["display"]) for ev in events],
                        [ref(ev.get("staticParent")) for ev in events],
                        [ref(ev.get("dynParent")) for ev in events])


def augmentation_to_dot(q, arena=None, name="augmentation"):
    """Graphviz: dotted static edges, solid triangle-headed dynamic edges."""
    lines = ["digraph %s {" % name, "  rankdir=BT;", "  node [shape=plaintext];"]
    for e in range(len(q)):
        label = ".".join(str(i) for i in q.display[e]) or "q"
        if arena is not None:
            label = ("-" if arena.polarity[q.display[e]] == NEG else "+") + " " + label
        lines.append('  e%d [label="%s"];' % (e, label))
    for e in range(len(q)):
        if q.sparent[e] >= 0:
            lines.append("  e%d -> e%d [style=dotted, arrowhead=none];" % (e, q.sparent[e]))
        if isinstance(q, Augmentation) and q.dparent[e] >= 0:
            lines.append("  e%d -> e%d [dir=back, arrowtail=normal];" % (e, q.dparent[e]))
    lines.append("}")
    return "\n".join(lines)


def enumerate_positions(arena, max_events):
    """Canonical keys of all positions of ``arena`` with at most ``max_events`` events."""
    trees = []
    for r in arena.roots():
        trees.extend(_tree_codes(arena, r, max_events))
    return [key for key, _ in _multisets(trees, max_events)]


def _tree_codes(arena, move, budget):
    if budget < 1:
        return []
    out = []
    opts = []
    for c in arena.children(move):
        opts.extend(_tree_codes(arena, c, budget - 1))
    for kids, used in _multisets(opts, budget - 1):
        out.append(((move, kids), used + 1))
    return out


def _multisets(options, budget):
    """Sorted tuples drawn with repetition from (code, size) options within ``budget``."""
    options = sorted(options)
    results = [((), 0)]

    def extend(start, chosen, used):
        for i in range(start, len(options)):
            code, size = options[i]
            if used + size <= budget:
                picked = chosen + (code,)
                results.append((picked, used + size))
                extend(i, picked, used + size)

    extend(0, (), 0)
    return results
