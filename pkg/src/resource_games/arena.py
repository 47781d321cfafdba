"""Polarized forests interpreting types and contexts.

Nodes are addressed by construction paths, tuples of small integers:

* the single node of the base arena is ``()``;
* in a tensor, component ``i`` (from 1) prefixes its addresses with ``i``;
* in ``A => B`` with ``B`` pointed, nodes of ``A`` get prefix ``1`` and
  nodes of ``B`` get prefix ``2``.  When ``B`` has several roots the arrow
  is the tensor of the arrows into each root subtree, numbered in address
  order.

So ``(o -> o) -> o`` has root ``(2,)``, its child ``(1, 2)`` and grandchild
``(1, 1)``.  Polarities are ``-1`` (Opponent) and ``+1`` (Player).
"""

from .syntax import Arrow, split_type

NEG, POS = -1, 1


class ArenaError(ValueError):
    pass


class Arena:
    """A finite forest of moves with a polarity on each move."""

    __slots__ = ("parent", "polarity", "_children", "_roots", "_key")

    def __init__(self, parent, polarity, check=True):
        self.parent = dict(parent)
        self.polarity = dict(polarity)
        children = {a: [] for a in self.parent}
        roots = []
        for a, p in self.parent.items():
            if p is None:
                roots.append(a)
            else:
                children[p].append(a)
        self._children = {a: tuple(sorted(c)) for a, c in children.items()}
        self._roots = tuple(sorted(roots))
        self._key = None
        if check:
            self.check()

    def check(self):
        if set(self.parent) != set(self.polarity):
            raise ArenaError("polarity must be defined on every node")
        for a, p in self.parent.items():
            if p is not None and p not in self.parent:
                raise ArenaError("parent of %r is not a node" % (a,))
            if p is not None and self.polarity[p] == self.polarity[a]:
                raise ArenaError("arena is not alternating at %r" % (a,))
            seen = set()
            while a is not None:
                if a in seen:
                    raise ArenaError("cycle through %r" % (a,))
                seen.add(a)
                a = self.parent[a]

    @property
    def nodes(self):
        return sorted(self.parent)

    def roots(self):
        return self._roots

    def children(self, a):
        return self._children[a]

    def depth(self, a):
        d = 0
        while self.parent[a] is not None:
            a = self.parent[a]
            d += 1
        return d

    def __len__(self):
        return len(self.parent)

    def __contains__(self, a):
        return a in self.parent

    @property
    def is_negative(self):
        return all(self.polarity[r] == NEG for r in self._roots)

    @property
    def is_pointed(self):
        return len(self._roots) == 1

    @property
    def key(self):
        if self._key is None:
            self._key = tuple(sorted((a, self.parent[a], self.polarity[a])
                                     for a in self.parent))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Arena) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "Arena(%d nodes, %d roots)" % (len(self), len(self._roots))

    def subtree(self, root):
        """The sub-arena below ``root`` (addresses unchanged)."""
        keep = [a for a in self.parent if _above(self, root, a)]
        return Arena({a: (None if a == root else self.parent[a]) for a in keep},
                     {a: self.polarity[a] for a in keep}, check=False)

    def to_dot(self, name="arena"):
        """Graphviz rendering: moves labelled with polarity, dotted parent edges."""
        lines = ["digraph %s {" % name, "  rankdir=BT;", "  node [shape=plaintext];"]
        ids = {a: "n%d" % i for i, a in enumerate(self.nodes)}
        for a in self.nodes:
            sign = "-" if self.polarity[a] == NEG else "+"
            lines.append('  %s [label="q%s\\n%s"];' % (ids[a], sign, _addr_text(a)))
        for a in self.nodes:
            p = self.parent[a]
            if p is not None:
                lines.append("  %s -> %s [style=dotted, arrowhead=none];" % (ids[a], ids[p]))
        lines.append("}")
        return "\n".join(lines)


def _above(arena, root, a):
    while a is not None:
        if a == root:
            return True
        a = arena.parent[a]
    return False


def _addr_text(a):
    return ".".join(str(i) for i in a) or "q"


EMPTY = Arena({}, {})
BASE = Arena({(): None}, {(): NEG})


def base():
    """The arena of the base type: one negative move."""
    return BASE


def empty():
    """The tensor unit: no move at all."""
    return EMPTY


def tensor(*arenas):
    """Disjoint union; component ``i`` is tagged with ``i`` (from 1)."""
    parent, polarity = {}, {}
    for i, ar in enumerate(arenas, 1):
        for a, p in ar.parent.items():
            parent[(i,) + a] = None if p is None else (i,) + p
            polarity[(i,) + a] = ar.polarity[a]
    return Arena(parent, polarity, check=False)


def dual(ar):
    """Same forest, every polarity flipped."""
    return Arena(ar.parent, {a: -p for a, p in ar.polarity.items()}, check=False)


def hom(a, b):
    """The arena ``A |- B``, i.e. the tensor of the dual of ``A`` with ``B``."""
    return tensor(dual(a), b)


def arrow(a, b):
    """``A => B``: copies of ``A`` placed (polarity flipped) under the roots of ``B``."""
    roots = b.roots()
    if len(roots) == 1:
        (r,) = roots
        parent, polarity = {}, {}
        for x, p in a.parent.items():
            parent[(1,) + x] = (2,) + r if p is None else (1,) + p
            polarity[(1,) + x] = -a.polarity[x]
        for y, p in b.parent.items():
            parent[(2,) + y] = None if p is None else (2,) + p
            polarity[(2,) + y] = b.polarity[y]
        return Arena(parent, polarity, check=False)
    return tensor(*(arrow(a, b.subtree(r)) for r in roots))


_TYPE_CACHE = {}


def interpret_type(ty):
    """The arena of a simple type (cached; arenas are treated as immutable)."""
    ar = _TYPE_CACHE.get(ty)
    if ar is None:
        if isinstance(ty, Arrow):
            ar = arrow(interpret_type(ty.domain), interpret_type(ty.codomain))
        else:
            ar = BASE
        ar.check()
        if not ar.is_negative:
            raise ArenaError("type arena has a positive root")
        _TYPE_CACHE[ty] = ar
    return ar


def interpret_types(types):
    """Tensor of the arenas of a list of types."""
    return tensor(*(interpret_type(t) for t in types))


def interpret_context(ctx):
    return interpret_types(ty for _, ty in ctx)


def flat_arrow(domains):
    """The arena ``(A1 x ... x An) => o`` for the given domain types."""
    return arrow(interpret_types(domains), BASE)


def to_flat_address(addr, arity):
    """Map an address of ``A1 -> ... -> An -> o`` to ``(A1 x ... x An) => o``."""
    j = 0
    while j < arity and addr[j] == 2:
        j += 1
    if j == arity:
        return (2,)
    return (1, j + 1) + addr[j + 1:]


def from_flat_address(addr, arity):
    """Inverse of :func:`to_flat_address`."""
    if addr[0] == 2:
        return (2,) * arity
    j = addr[1]
    return (2,) * (j - 1) + (1,) + addr[2:]


def type_arity(ty):
    return len(split_type(ty))
