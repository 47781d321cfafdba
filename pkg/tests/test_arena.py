import pytest
from hypothesis import given
from hypothesis import strategies as hs

from resource_games.arena import (BASE, EMPTY, NEG, POS, Arena, ArenaError, arrow, dual,
                                  flat_arrow, from_flat_address, hom, interpret_context,
                                  interpret_type, tensor, to_flat_address)
from resource_games.syntax import Arrow, O, parse_type, split_type
from resource_games.typecheck import Context

types = hs.recursive(hs.just(O), lambda sub: hs.builds(Arrow, sub, sub), max_leaves=6)


def T(text):
    return interpret_type(parse_type(text))


def _atoms(ty):
    return 1 if ty == O else _atoms(ty.domain) + _atoms(ty.codomain)


def test_tensor_examples():
    a = T("o -> o")
    assert len(tensor(EMPTY, a)) == len(a)
    assert {x[1:] for x in tensor(EMPTY, a).nodes} == set(a.nodes)
    oo = tensor(BASE, BASE)
    assert len(oo.roots()) == 2 and all(oo.polarity[r] == NEG for r in oo.roots())
    assert len(tensor(a, oo)) == len(a) + len(oo)


def test_dual_and_hom():
    a = T("(o -> o) -> o")
    assert dual(dual(a)) == a
    h = hom(BASE, BASE)
    assert sorted(h.polarity[r] for r in h.roots()) == [NEG, POS]
    assert h.polarity[(1,)] == POS and h.polarity[(2,)] == NEG
    b = T("o -> o")
    assert {x[1:] for x in hom(EMPTY, b).nodes} == set(b.nodes)


def test_arrow_examples():
    a = arrow(BASE, BASE)
    assert a.roots() == ((2,),)
    assert a.children((2,)) == ((1,),)
    assert a.polarity[(2,)] == NEG and a.polarity[(1,)] == POS
    assert len(arrow(T("o -> o"), EMPTY)) == 0


def test_chain_for_o_to_o_to_o_argument():
    a = T("(o -> o) -> o")
    assert a.roots() == ((2,),)
    assert a.children((2,)) == ((1, 2),)
    assert a.children((1, 2)) == ((1, 1),)
    assert [a.polarity[x] for x in [(2,), (1, 2), (1, 1)]] == [NEG, POS, NEG]


def test_running_example_arena():
    # depth-3 forest: root, the call of f, two argument results, their two arguments
    a = T("((o->o)->(o->o)->o)->o")
    assert len(a) == 6
    assert a.roots() == ((2,),)
    depths = {x: a.depth(x) for x in a.nodes}
    assert max(depths.values()) == 3
    assert sorted(depths.values()) == [0, 1, 2, 2, 3, 3]
    for x in a.nodes:
        assert a.polarity[x] == (NEG if depths[x] % 2 == 0 else POS)


def test_contexts():
    assert len(interpret_context(Context())) == 0
    ctx = Context.parse("y:o, f:o->o")
    a = interpret_context(ctx)
    assert a.roots() == ((1,), (2, 2))


def test_invalid_arenas_are_rejected():
    with pytest.raises(ArenaError):
        Arena({(): None, (1,): ()}, {(): NEG, (1,): NEG})
    with pytest.raises(ArenaError):
        Arena({(): (1,), (1,): ()}, {(): NEG, (1,): POS})


def test_dot_export():
    text = T("o -> o").to_dot()
    assert text.startswith("digraph") and "dotted" in text and "q-" in text and "q+" in text


@given(types)
def test_type_arenas_are_pointed_negative_alternating(ty):
    a = interpret_type(ty)
    a.check()
    assert a.is_pointed and a.is_negative
    assert len(a) == _atoms(ty)


@given(hs.lists(types, max_size=3))
def test_context_arenas_are_negative(tys):
    a = interpret_context(Context(("v%d" % i, t) for i, t in enumerate(tys)))
    a.check()
    assert a.is_negative and len(a.roots()) == len(tys)


@given(types)
def test_flat_addresses_are_a_bijection(ty):
    doms = split_type(ty)
    a, flat = interpret_type(ty), flat_arrow(doms)
    image = {to_flat_address(x, len(doms)) for x in a.nodes}
    assert image == set(flat.nodes)
    for x in a.nodes:
        y = to_flat_address(x, len(doms))
        assert from_flat_address(y, len(doms)) == x
        assert flat.polarity[y] == a.polarity[x]
