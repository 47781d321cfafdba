"""Strategies: weighted sums of isogmentations, and how they compose.

A finite strategy is a table from canonical augmentation keys to
coefficients.  Structural morphisms such as identities have infinite
support, so they are represented by :class:`Kernel` objects that produce,
on demand, the part of their support above a given position of one of
their two sides.  Composites, tensors and sums of such objects are built
lazily and queried the same way; :func:`evaluate` materializes anything
whose support is finite.
"""

import contextlib
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from . import arena as ar
from .causal import (Augmentation, Configuration, configuration_from_key,
                     enumerate_positions, enumerate_symmetries, from_key,
                     sym_count_formula, validate_augmentation)

__all__ = [
    "INF", "Strategy", "Kernel", "Compose", "Tensor", "Sum",
    "DeadlockDetected", "InfiniteFamily", "WindowTooSmall", "Interaction",
    "interact", "compose_aug", "classify_edges", "compose", "tensor_strategy",
    "tensor_aug", "apply_kernel", "evaluate", "curry", "uncurry",
    "identity", "pointed_identity", "delta", "mu", "epsilon", "eta",
    "left_unitor", "right_unitor", "associator", "braiding", "medial",
    "iso_kernel", "evaluation", "distribute", "gather", "windowed_equal",
    "left_position", "right_position", "strategy_to_json", "strategy_from_json",
    "left_unitor_inv", "right_unitor_inv", "law_suite", "check_laws", "WindowResult",
]


# ---------------------------------------------------------------------------
# Coefficients

class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "inf"

    __str__ = __repr__

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        return 0 if other == 0 else self

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("inf")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return not isinstance(other, _Infinity)


INF = _Infinity()


def _coeff(c):
    if isinstance(c, _Infinity):
        return c
    if isinstance(c, str):
        return INF if c == "inf" else Fraction(c)
    return Fraction(c)


def _add_into(table, key, c):
    if c == 0:
        return
    v = table.get(key, 0) + c
    if v == 0:
        table.pop(key, None)
    else:
        table[key] = v


# ---------------------------------------------------------------------------
# Exceptions

class DeadlockDetected(RuntimeError):
    """The causal relation of an interaction has a cycle."""

    def __init__(self, cycle):
        super().__init__("interaction has a causal cycle through %s" % (cycle,))
        self.cycle = cycle


class InfiniteFamily(Exception):
    """A lazily represented morphism was asked for an infinite set of isogmentations."""


class WindowTooSmall(Exception):
    pass


# ---------------------------------------------------------------------------
# Projections

@lru_cache(maxsize=None)
def _rep(key):
    return from_key(key)


def _project(q, side):
    keep = [e for e, d in enumerate(q.display) if d[0] == side]
    sub, old = Configuration(q.display, q.sparent).restrict(keep, lambda d: d[1:])
    return sub, old


@lru_cache(maxsize=None)
def _projection(key, side):
    sub, old = _project(_rep(key), side)
    return sub, tuple(old)


def left_position(key):
    """Position of the left-hand projection of an isogmentation."""
    return _projection(key, 1)[0].position


def right_position(key):
    return _projection(key, 2)[0].position


def _polarities(q):
    """Polarity of each event: dynamic roots are negative, and dynamic edges alternate."""
    pol = [0] * len(q)
    for e in range(len(q)):
        if pol[e]:
            continue
        chain = []
        f = e
        while f >= 0 and not pol[f]:
            chain.append(f)
            f = q.dparent[f]
        p = ar.POS if f < 0 else pol[f]
        for g in reversed(chain):
            p = -p
            pol[g] = p
    return pol


# ---------------------------------------------------------------------------
# Interaction and hiding

class Interaction:
    """The events of ``q`` followed by those of ``p``, with the causal relation."""

    def __init__(self, q, p, phi):
        self.q, self.p, self.phi = q, p, tuple(phi)
        nq = self.nq = len(q)
        n = nq + len(p)
        self.pol = _polarities(q) + _polarities(p)
        qb, qold = _project(q, 2)
        pb, pold = _project(p, 1)
        if len(qold) != len(pold) or len(self.phi) != len(qold):
            raise ValueError("mediating map does not match the interfaces")
        self.partner = {}
        preds = [[] for _ in range(n)]
        for e, d in enumerate(q.dparent):
            if d >= 0:
                preds[e].append(d)
        for e, d in enumerate(p.dparent):
            if d >= 0:
                preds[nq + e].append(nq + d)
        for i, j in enumerate(self.phi):
            a, b = qold[i], nq + pold[j]
            self.partner[a] = b
            self.partner[b] = a
            if self.pol[a] == ar.POS:
                preds[b].append(a)
            else:
                preds[a].append(b)
        self.preds = preds
        self.order = _toposort(preds)
        anc = [0] * n
        for e in self.order:
            m = 0
            for d in preds[e]:
                m |= anc[d] | (1 << d)
            anc[e] = m
        self.ancestors = anc
        self.visible = [q.display[e][0] == 1 for e in range(nq)] + \
                       [p.display[e][0] == 2 for e in range(len(p))]

    def __len__(self):
        return len(self.preds)

    def leq(self, a, b):
        return a == b or bool(self.ancestors[b] >> a & 1)

    def immediate(self):
        """Immediate causal links ``(a, b)``."""
        out = []
        for b, ps in enumerate(self.preds):
            for a in set(ps):
                if not any(c != a and self.ancestors[c] >> a & 1 for c in ps):
                    out.append((a, b))
        return out

    def compose(self):
        """Restriction to the visible events, as an augmentation on ``A |- C``."""
        vis = [e for e in range(len(self)) if self.visible[e]]
        new = {e: i for i, e in enumerate(vis)}
        nq = self.nq
        disp, sp, dp = [], [], []
        for e in vis:
            if e < nq:
                disp.append(self.q.display[e])
                s = self.q.sparent[e]
                sp.append(new[s] if s >= 0 else -1)
            else:
                disp.append(self.p.display[e - nq])
                s = self.p.sparent[e - nq]
                sp.append(new[s + nq] if s >= 0 else -1)
            cand = [a for a in vis if self.ancestors[e] >> a & 1]
            best = -1
            for a in cand:
                if best < 0 or self.ancestors[a] >> best & 1:
                    best = a
            for a in cand:
                if not self.leq(a, best):
                    raise AssertionError("visible causal history is not a chain")
            dp.append(new[best] if best >= 0 else -1)
        return Augmentation(disp, sp, dp)


def _toposort(preds):
    n = len(preds)
    indeg = [len(set(p)) for p in preds]
    succ = [[] for _ in range(n)]
    for b, ps in enumerate(preds):
        for a in set(ps):
            succ[a].append(b)
    ready = [e for e in range(n) if indeg[e] == 0]
    order = []
    while ready:
        e = ready.pop()
        order.append(e)
        for b in succ[e]:
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
    if len(order) != n:
        raise DeadlockDetected(sorted(set(range(n)) - set(order)))
    return order


def interact(q, p, phi):
    """The interaction of ``q`` on ``A |- B`` with ``p`` on ``B |- C`` along ``phi``.

    ``phi[i] = j`` pairs the ``i``-th event of the right projection of ``q``
    with the ``j``-th event of the left projection of ``p``.
    """
    return Interaction(q, p, phi)


def compose_aug(q, p, phi):
    return Interaction(q, p, phi).compose()


def classify_edges(inter):
    """Immediate links of an interaction that fall outside the three allowed shapes.

    For a link ``a -> b`` leaving an event of one side: if ``a`` is negative
    there, or positive and external, ``b`` is its dynamic child on the
    same side; if ``a`` is positive and on the shared arena, ``b`` is its
    partner.  Symmetrically for the event a link enters.  Returns the list
    of offending links (empty when all is well).
    """
    nq = inter.nq
    bad = []

    def side(e):
        return 0 if e < nq else 1

    def dparent(e):
        if e < nq:
            return inter.q.dparent[e]
        d = inter.p.dparent[e - nq]
        return d + nq if d >= 0 else -1

    def shared(e):
        return e in inter.partner

    for a, b in inter.immediate():
        # forward
        if inter.pol[a] == ar.POS and shared(a):
            ok = inter.partner[a] == b
        else:
            ok = side(a) == side(b) and dparent(b) == a
        # backward
        if ok:
            if inter.pol[b] == ar.NEG and shared(b):
                ok = inter.partner[b] == a
            else:
                ok = side(a) == side(b) and dparent(b) == a
        if not ok:
            bad.append((a, b))
    return bad


@lru_cache(maxsize=200000)
def _compose_keys(kq, kp):
    """Counter of composite keys over all mediating symmetries."""
    q, p = _rep(kq), _rep(kp)
    xq = _projection(kq, 2)[0]
    xp = _projection(kp, 1)[0]
    out = Counter()
    for phi in enumerate_symmetries(xq, xp):
        out[Interaction(q, p, phi).compose().key] += 1
    return out


# ---------------------------------------------------------------------------
# Morphisms

class Morphism:
    """Common interface: ``from_left``, ``from_right`` and ``support``."""

    left = right = None

    def from_left(self, pos):
        raise NotImplementedError

    def from_right(self, pos):
        raise NotImplementedError

    def support(self):
        raise InfiniteFamily(repr(self))

    @property
    def interface(self):
        return ar.hom(self.left, self.right)

    def __add__(self, other):
        return Sum(self, other)

    def __matmul__(self, other):
        """``tau @ sigma`` is ``tau`` after ``sigma``."""
        return Compose(self, other)


class Strategy(Morphism):
    """Finitely supported strategy on ``left |- right``."""

    def __init__(self, left, right, table=None):
        self.left, self.right = left, right
        self.table = {}
        for k, c in (table or {}).items():
            _add_into(self.table, k, _coeff(c))
        self._by_left = self._by_right = None

    @classmethod
    def single(cls, left, right, key, coeff=1):
        return cls(left, right, {key: coeff})

    @classmethod
    def zero(cls, left, right):
        return cls(left, right)

    def support(self):
        return dict(self.table)

    def _index(self, side):
        idx = {}
        for k, c in self.table.items():
            pos = left_position(k) if side == 1 else right_position(k)
            idx.setdefault(pos, {})[k] = c
        return idx

    def from_left(self, pos):
        if self._by_left is None:
            self._by_left = self._index(1)
        return dict(self._by_left.get(pos, {}))

    def from_right(self, pos):
        if self._by_right is None:
            self._by_right = self._index(2)
        return dict(self._by_right.get(pos, {}))

    def __eq__(self, other):
        if isinstance(other, Strategy):
            return self.table == other.table
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def __len__(self):
        return len(self.table)

    def __bool__(self):
        return bool(self.table)

    def items(self):
        return self.table.items()

    def scale(self, k):
        k = _coeff(k)
        return Strategy(self.left, self.right, {key: c * k for key, c in self.table.items()})

    def plus(self, other):
        table = dict(self.table)
        for k, c in other.table.items():
            _add_into(table, k, c)
        return Strategy(self.left, self.right, table)

    def is_pointed(self):
        return all(len(k) == 1 for k in self.table)

    def validate(self):
        hom = self.interface
        for k in self.table:
            validate_augmentation(hom, _rep(k))
        return True

    def __repr__(self):
        return "Strategy(%d isogmentations)" % len(self.table)


def _table_tensor(*tables):
    out = {(): Fraction(1)}
    for i, t in enumerate(tables, 1):
        nxt = {}
        for k1, c1 in out.items():
            for k2, c2 in t.items():
                _add_into(nxt, k1 + (_tag(k2, i),), c1 * c2)
        out = nxt
    # keys were accumulated as tuples of tagged component keys
    final = {}
    for parts, c in out.items():
        _add_into(final, _merge_keys(parts), c)
    return final


def _tag(key, i):
    """Prefix every display in an augmentation key with component ``i`` (after the side)."""
    return tuple(_tag_code(c, i) for c in key)


def _tag_code(code, i):
    d, off, kids = code
    return ((d[0], i) + d[1:], off, tuple(_tag_code(k, i) for k in kids))


def _merge_keys(parts):
    return tuple(sorted(c for part in parts for c in part))


def tensor_aug(*qs):
    """``q1 ⊗ ... ⊗ qn`` on ``A1 ⊗ ... ⊗ An |- B1 ⊗ ... ⊗ Bn``."""
    disp, sp, dp = [], [], []
    for i, q in enumerate(qs, 1):
        n = len(disp)
        disp.extend((d[0], i) + d[1:] for d in q.display)
        sp.extend(s + n if s >= 0 else -1 for s in q.sparent)
        dp.extend(s + n if s >= 0 else -1 for s in q.dparent)
    return Augmentation(disp, sp, dp)


def _split_key(pos, n):
    """Split a position of ``A1 ⊗ ... ⊗ An`` into its components."""
    parts = [[] for _ in range(n)]
    for code in pos:
        parts[code[0][0] - 1].append(_strip(code))
    return [tuple(sorted(p)) for p in parts]


def _strip(code):
    return (code[0][1:], tuple(_strip(c) for c in code[1]))


class Tensor(Morphism):
    """Tensor product of any number of morphisms (none gives the unit)."""

    def __init__(self, *factors):
        self.factors = factors
        self.left = ar.tensor(*(f.left for f in factors))
        self.right = ar.tensor(*(f.right for f in factors))

    def _from(self, pos, side):
        tables = []
        for f, x in zip(self.factors, _split_key(pos, len(self.factors))):
            t = f.from_left(x) if side == 1 else f.from_right(x)
            if not t:
                return {}
            tables.append(t)
        return _table_tensor(*tables)

    def from_left(self, pos):
        if not self.factors:
            return {(): Fraction(1)} if pos == () else {}
        return self._from(pos, 1)

    def from_right(self, pos):
        if not self.factors:
            return {(): Fraction(1)} if pos == () else {}
        return self._from(pos, 2)

    def support(self):
        tables = []
        for f in self.factors:
            t = f.support()
            if not t:
                return {}
            tables.append(t)
        return _table_tensor(*tables)

    def __repr__(self):
        return "(" + " ⊗ ".join(repr(f) for f in self.factors) + ")"


class Sum(Morphism):
    def __init__(self, *terms):
        self.terms = terms
        self.left, self.right = terms[0].left, terms[0].right

    def _combine(self, tables):
        out = {}
        for t in tables:
            for k, c in t.items():
                _add_into(out, k, c)
        return out

    def from_left(self, pos):
        return self._combine(t.from_left(pos) for t in self.terms)

    def from_right(self, pos):
        return self._combine(t.from_right(pos) for t in self.terms)

    def support(self):
        return self._combine(t.support() for t in self.terms)

    def __repr__(self):
        return " + ".join(repr(t) for t in self.terms)


_GUARD = []


@contextlib.contextmanager
def _guarded():
    _GUARD.append(True)
    try:
        yield
    finally:
        _GUARD.pop()


def _lazy(m):
    """True when ``m`` involves no finite strategy at all."""
    if isinstance(m, Kernel):
        return True
    if isinstance(m, Strategy):
        return False
    if isinstance(m, Compose):
        return _lazy(m.tau) and _lazy(m.sigma)
    if isinstance(m, Tensor):
        return all(_lazy(f) for f in m.factors)
    if isinstance(m, Sum):
        return all(_lazy(t) for t in m.terms)
    return False


class Compose(Morphism):
    """``tau`` after ``sigma``: a sum over all triples ``(q, p, phi)``."""

    def __init__(self, tau, sigma):
        self.tau, self.sigma = tau, sigma
        self.left, self.right = sigma.left, tau.right
        self._kernels_only = None

    def _glue(self, qs, ps, out):
        check = bool(_GUARD)
        if check and self._kernels_only is None:
            self._kernels_only = _lazy(self)
        for kq, cq in qs.items():
            for kp, cp in ps.items():
                for key, mult in _compose_keys(kq, kp).items():
                    if check and self._kernels_only:
                        hidden = 2 * len(_projection(kq, 2)[0])
                        if hidden > _count(key):
                            raise WindowTooSmall("middle position of %d events under %d visible"
                                                 % (hidden, _count(key)))
                    _add_into(out, key, cq * cp * mult)

    def from_left(self, pos):
        out = {}
        groups = {}
        for kq, cq in self.sigma.from_left(pos).items():
            groups.setdefault(right_position(kq), {})[kq] = cq
        for mid, qs in groups.items():
            ps = self.tau.from_left(mid)
            if ps:
                self._glue(qs, ps, out)
        return out

    def from_right(self, pos):
        out = {}
        groups = {}
        for kp, cp in self.tau.from_right(pos).items():
            groups.setdefault(left_position(kp), {})[kp] = cp
        for mid, ps in groups.items():
            qs = self.sigma.from_right(mid)
            if qs:
                self._glue(qs, ps, out)
        return out

    def support(self):
        out = {}
        try:
            qsup = self.sigma.support()
        except InfiniteFamily:
            qsup = None
        if qsup is not None:
            groups = {}
            for kq, cq in qsup.items():
                groups.setdefault(right_position(kq), {})[kq] = cq
            for mid, qs in groups.items():
                ps = self.tau.from_left(mid)
                if ps:
                    self._glue(qs, ps, out)
            return out
        groups = {}
        for kp, cp in self.tau.support().items():
            groups.setdefault(left_position(kp), {})[kp] = cp
        for mid, ps in groups.items():
            qs = self.sigma.from_right(mid)
            if qs:
                self._glue(qs, ps, out)
        return out

    def __repr__(self):
        return "(%r ∘ %r)" % (self.tau, self.sigma)


def _count(key):
    return sum(1 + _count(c[-1]) for c in key)


def evaluate(m):
    """Materialize a morphism with finite support."""
    if isinstance(m, Strategy):
        return m
    return Strategy(m.left, m.right, m.support())


def compose(tau, sigma):
    """Composite of two morphisms; finite when either factor allows it."""
    return evaluate(Compose(tau, sigma))


def tensor_strategy(*factors):
    return evaluate(Tensor(*factors))


def apply_kernel(kernel, sigma, side="left"):
    """Compose a strategy with a kernel placed on its ``side``.

    ``side="left"`` means ``sigma`` after the kernel, so only kernel
    isogmentations above the left projections of ``sigma`` are generated.
    """
    if side == "left":
        return compose(sigma, kernel)
    if side == "right":
        return compose(kernel, sigma)
    raise ValueError("side must be 'left' or 'right'")


# ---------------------------------------------------------------------------
# Copycat kernels

class Kernel(Morphism):
    """Sum of copycat isogmentations ``cc_w`` weighted ``1/|Sym w|``.

    ``w`` ranges over the positions of a base arena ``base``; ``disp1`` and
    ``disp2`` send base moves to moves of ``left |- right``.  The first copy
    carries the opposite polarity, the second the same; each copy keeps the
    static order of ``w`` except where it lands on a root of the interface.
    Each negative event of a pair points to the positive one.
    """

    def __init__(self, name, left, right, base, disp1, disp2, pointed_only=False):
        self.name = name
        self.left, self.right, self.base = left, right, base
        self.pointed_only = pointed_only
        self.d1 = {m: tuple(disp1(m)) for m in base.nodes}
        self.d2 = {m: tuple(disp2(m)) for m in base.nodes}
        hom = self.interface
        for m in base.nodes:
            pol = base.polarity[m]
            if hom.polarity[self.d1[m]] != -pol or hom.polarity[self.d2[m]] != pol:
                raise ValueError("kernel %s does not respect polarities at %r" % (name, m))
        self._roots = set(hom.roots())
        self._cache = {}

    def __repr__(self):
        return self.name

    def instantiate(self, w):
        """The copycat augmentation ``cc_w`` for a configuration ``w`` of the base arena."""
        n = len(w)
        disp = [self.d1[d] for d in w.display] + [self.d2[d] for d in w.display]
        sp, dp = [], []
        for copy in (0, 1):
            for e in range(n):
                s = w.sparent[e]
                if s < 0 or disp[copy * n + e] in self._roots:
                    sp.append(-1)
                else:
                    sp.append(copy * n + s)
        dp = [0] * (2 * n)
        for e in range(n):
            s = w.sparent[e]
            if self.base.polarity[w.display[e]] == ar.NEG:
                # second copy negative: it starts, the first copy answers
                dp[n + e] = n + s if s >= 0 else -1
                dp[e] = n + e
            else:
                dp[e] = s
                dp[n + e] = e
        return Augmentation(disp, sp, dp)

    def _from(self, pos, side):
        ck = (pos, side)
        hit = self._cache.get(ck)
        if hit is not None:
            return dict(hit)
        table = self.d1 if all(d[0] == side for d in self.d1.values()) else None
        if table is None and all(d[0] == side for d in self.d2.values()):
            table = self.d2
        if table is None:
            raise InfiniteFamily("%s from the %s" % (self.name, "left" if side == 1 else "right"))
        x = configuration_from_key(pos)
        preimages = {}
        for m, d in table.items():
            preimages.setdefault(d[1:], []).append(m)
        seen = {}
        for w in _pullbacks(x, preimages, self.base):
            wpos = w.position
            if wpos in seen:
                continue
            if self.pointed_only and len(wpos) != 1:
                continue
            cc = self.instantiate(configuration_from_key(wpos))
            proj = _project(cc, side)[0]
            if proj.position == pos:
                seen[wpos] = cc.key
        out = {}
        for wpos, key in seen.items():
            _add_into(out, key, Fraction(1, sym_count_formula(wpos)))
        self._cache[ck] = out
        return dict(out)

    def from_left(self, pos):
        return self._from(pos, 1)

    def from_right(self, pos):
        return self._from(pos, 2)


def _pullbacks(x, preimages, base):
    """Configurations of ``base`` mapped onto the part of ``x`` hit by the display map."""
    n = len(x)
    choice = [None] * n
    events = [e for e in range(n) if x.display[e] in preimages]
    idx = {e: i for i, e in enumerate(events)}

    def go(i):
        if i == len(events):
            disp = [choice[e] for e in events]
            sp = [idx[x.sparent[e]] if x.sparent[e] in idx else -1 for e in events]
            yield Configuration(disp, sp)
            return
        e = events[i]
        s = x.sparent[e]
        want = choice[s] if s >= 0 and s in idx else None
        for m in preimages[x.display[e]]:
            if base.parent[m] == want:
                choice[e] = m
                yield from go(i + 1)
        choice[e] = None

    yield from go(0)


def _fold(m):
    return m[1:]


def _ntensor(a, n):
    return ar.tensor(*([a] * n))


def identity(a):
    return Kernel("id", a, a, a, lambda m: (1,) + m, lambda m: (2,) + m)


def pointed_identity(a):
    return Kernel("id•", a, a, a, lambda m: (1,) + m, lambda m: (2,) + m, pointed_only=True)


def delta(a, n=2):
    """Comultiplication ``A |- A^{⊗n}``; ``n = 0`` gives the counit."""
    m = _ntensor(a, n)
    name = "δ" if n == 2 else ("ε" if n == 0 else "δ%d" % n)
    return Kernel(name, a, m, m, lambda x: (1,) + _fold(x), lambda x: (2,) + x)


def mu(a, n=2):
    """Multiplication ``A^{⊗n} |- A``; ``n = 0`` gives the unit."""
    m = _ntensor(a, n)
    name = "μ" if n == 2 else ("η" if n == 0 else "μ%d" % n)
    return Kernel(name, m, a, m, lambda x: (1,) + x, lambda x: (2,) + _fold(x))


def epsilon(a):
    return delta(a, 0)


def eta(a):
    return mu(a, 0)


def iso_kernel(name, left, right, f):
    """Copycat along an arena isomorphism ``f`` from ``left`` to ``right``."""
    return Kernel(name, left, right, left, lambda m: (1,) + m, lambda m: (2,) + f(m))


def left_unitor(a):
    return iso_kernel("λ", ar.tensor(ar.EMPTY, a), a, lambda m: m[1:])


def right_unitor(a):
    return iso_kernel("ρ", ar.tensor(a, ar.EMPTY), a, lambda m: m[1:])


def left_unitor_inv(a):
    return iso_kernel("λ⁻¹", a, ar.tensor(ar.EMPTY, a), lambda m: (2,) + m)


def right_unitor_inv(a):
    return iso_kernel("ρ⁻¹", a, ar.tensor(a, ar.EMPTY), lambda m: (1,) + m)


def associator(a, b, c):
    """``(A ⊗ B) ⊗ C |- A ⊗ (B ⊗ C)``."""
    def f(m):
        if m[0] == 1:
            return (1,) + m[2:] if m[1] == 1 else (2, 1) + m[2:]
        return (2, 2) + m[1:]
    return iso_kernel("α", ar.tensor(ar.tensor(a, b), c), ar.tensor(a, ar.tensor(b, c)), f)


def braiding(a, b):
    return iso_kernel("γ", ar.tensor(a, b), ar.tensor(b, a), lambda m: (3 - m[0],) + m[1:])


def medial(a, b, c, d):
    """``(A ⊗ B) ⊗ (C ⊗ D) |- (A ⊗ C) ⊗ (B ⊗ D)``, swapping the middle factors."""
    return iso_kernel("medial",
                      ar.tensor(ar.tensor(a, b), ar.tensor(c, d)),
                      ar.tensor(ar.tensor(a, c), ar.tensor(b, d)),
                      lambda m: (m[1], m[0]) + m[2:])


def evaluation(a, b):
    """``ev : (A => B) ⊗ A |- B`` for pointed ``B``, the uncurried identity."""
    arr = ar.arrow(a, b)

    def second(m):
        return (2,) + m[1:] if m[0] == 2 else (1, 2) + m[1:]

    return Kernel("ev", ar.tensor(arr, a), b, arr, lambda m: (1, 1) + m, second)


def distribute(a):
    """``(A ⊗ γ ⊗ A) ∘ (δ ⊗ δ)`` as a lazy morphism ``A ⊗ A |- (A ⊗ A) ⊗ (A ⊗ A)``."""
    return Compose(medial(a, a, a, a), Tensor(delta(a), delta(a)))


def gather(a):
    return Tensor(mu(a), mu(a))


# ---------------------------------------------------------------------------
# Currying

def curry(sigma, gamma, a):
    """``Strat(Γ ⊗ A, B) -> Strat(Γ, A => B)`` for pointed ``B``: pure re-addressing."""
    if sigma.left != ar.tensor(gamma, a):
        raise ValueError("left interface is not Γ ⊗ A")
    b = sigma.right
    if not b.is_pointed:
        raise ValueError("currying needs a pointed codomain")
    a_roots = {(1, 2) + r for r in a.roots()}
    out = {}
    for k, c in sigma.table.items():
        q = _rep(k)
        disp, sp = [], []
        for e, d in enumerate(q.display):
            s = q.sparent[e]
            if d in a_roots:
                s = _dyn_root(q, e)
            if d[0] == 2:
                d = (2, 2) + d[1:]
            elif d[1] == 1:
                d = (1,) + d[2:]
            else:
                d = (2, 1) + d[2:]
            disp.append(d)
            sp.append(s)
        _add_into(out, Augmentation(disp, sp, q.dparent).key, c)
    return Strategy(gamma, ar.arrow(a, b), out)


def uncurry(sigma, a):
    """Inverse of :func:`curry`; ``sigma`` lives on ``Γ |- A => B``."""
    gamma = sigma.left
    b = _codomain(sigma.right)
    a_roots = {(2, 1) + r for r in a.roots()}
    out = {}
    for k, c in sigma.table.items():
        q = _rep(k)
        disp, sp = [], []
        for e, d in enumerate(q.display):
            s = -1 if d in a_roots else q.sparent[e]
            if d[0] == 1:
                d = (1, 1) + d[1:]
            elif d[1] == 2:
                d = (2,) + d[2:]
            else:
                d = (1, 2) + d[2:]
            disp.append(d)
            sp.append(s)
        _add_into(out, Augmentation(disp, sp, q.dparent).key, c)
    return Strategy(ar.tensor(gamma, a), b, out)


def _codomain(arrow_arena):
    keep = {x[1:]: (None if p is None or p[0] != 2 else p[1:])
            for x, p in arrow_arena.parent.items() if x[0] == 2}
    return ar.Arena(keep, {x[1:]: arrow_arena.polarity[x] for x in arrow_arena.parent
                           if x[0] == 2})


def _dyn_root(q, e):
    while q.dparent[e] >= 0:
        e = q.dparent[e]
    return e


# ---------------------------------------------------------------------------
# Windowed comparison

class WindowResult:
    __slots__ = ("equal", "counterexample", "checked")

    def __init__(self, equal, counterexample, checked):
        self.equal, self.counterexample, self.checked = equal, counterexample, checked

    def __bool__(self):
        return self.equal

    def __repr__(self):
        if self.equal:
            return "WindowResult(equal, %d isogmentations checked)" % self.checked
        return "WindowResult(differ at %r)" % (self.counterexample,)


def windowed_equal(lhs, rhs, window=6):
    """Compare two morphisms on every isogmentation with at most ``window`` events.

    Every such isogmentation has a left projection of at most ``window``
    events, and ``from_left`` is exact for a fixed projection, so the check
    is complete up to the window.  Kernel-only composites additionally
    assert that the hidden part never outgrows the visible part.
    """
    if window < 1:
        raise ValueError("window must be positive")
    if lhs.left != rhs.left or lhs.right != rhs.right:
        raise ValueError("interfaces differ")
    checked = 0
    with _guarded():
        for pos in enumerate_positions(lhs.left, window):
            a = {k: c for k, c in lhs.from_left(pos).items() if _count(k) <= window}
            b = {k: c for k, c in rhs.from_left(pos).items() if _count(k) <= window}
            for k in set(a) | set(b):
                checked += 1
                if a.get(k, 0) != b.get(k, 0):
                    return WindowResult(False, (k, a.get(k, 0), b.get(k, 0)), checked)
    return WindowResult(True, None, checked)


# ---------------------------------------------------------------------------
# Law catalogue

def law_suite(a):
    """Named pairs ``(lhs, rhs)`` of the bialgebra and pointed-identity laws on ``a``."""
    i = ar.EMPTY
    ida, pid = identity(a), pointed_identity(a)
    d, m, e, u = delta(a), mu(a), epsilon(a), eta(a)
    return {
        "identity idempotent": (Compose(ida, ida), ida),
        "coassociativity": (Compose(associator(a, a, a), Compose(Tensor(d, ida), d)),
                            Compose(Tensor(ida, d), d)),
        "left counit": (Compose(left_unitor(a), Compose(Tensor(e, ida), d)), ida),
        "right counit": (Compose(right_unitor(a), Compose(Tensor(ida, e), d)), ida),
        "cocommutativity": (Compose(braiding(a, a), d), d),
        "associativity": (Compose(m, Tensor(m, ida)),
                          Compose(m, Compose(Tensor(ida, m), associator(a, a, a)))),
        "left unit": (Compose(m, Compose(Tensor(u, ida), left_unitor_inv(a))), ida),
        "right unit": (Compose(m, Compose(Tensor(ida, u), right_unitor_inv(a))), ida),
        "commutativity": (Compose(m, braiding(a, a)), m),
        "bialgebra": (Compose(d, m), Compose(gather(a), distribute(a))),
        "comultiplied unit": (Compose(d, u), Tensor(u, u)),
        "counit of product": (Compose(e, m), Tensor(e, e)),
        "counit of unit": (Compose(e, u), identity(i)),
        "pointed idempotent": (Compose(pid, pid), pid),
        "pointed comultiplication": (
            Compose(d, pid),
            Sum(Compose(Tensor(pid, u), right_unitor_inv(a)),
                Compose(Tensor(u, pid), left_unitor_inv(a)))),
        "pointed multiplication": (
            Compose(pid, m),
            Sum(Compose(right_unitor(a), Tensor(pid, e)),
                Compose(left_unitor(a), Tensor(e, pid)))),
        "pointed counit": (Compose(e, pid), Strategy.zero(a, i)),
        "pointed unit": (Compose(pid, u), Strategy.zero(i, a)),
    }


def check_laws(a, window=6, names=None):
    """``[(name, WindowResult)]`` for the laws of :func:`law_suite` (optionally a subset)."""
    out = []
    for name, (lhs, rhs) in law_suite(a).items():
        if names is None or name in names:
            out.append((name, windowed_equal(lhs, rhs, window)))
    return out


# ---------------------------------------------------------------------------
# Interchange

def strategy_to_json(sigma, left_text="", right_text=""):
    from .causal import augmentation_to_json
    return {
        "interface": {"left": left_text, "right": right_text},
        "entries": [
            {"augmentation": augmentation_to_json(_rep(k)), "coefficient": str(c)}
            for k, c in sorted(sigma.table.items(), key=lambda kc: repr(kc[0]))
        ],
    }


def strategy_from_json(data, left, right):
    from .causal import augmentation_from_json
    table = {}
    for entry in data["entries"]:
        _add_into(table, augmentation_from_json(entry["augmentation"]).key,
                  _coeff(entry["coefficient"]))
    return Strategy(left, right, table)
