import pytest
from hypothesis import given

from conftest import CTX, typed_terms
from resource_games.rewrite import normalize, one_step_reducts
from resource_games.syntax import Abs, Var, parse, parse_bag, parse_type
from resource_games.typecheck import (ArityMismatch, Context, DomainMismatch, HeterogeneousBag,
                                      NotEtaLong, TypingError, UnboundVariable, is_normal,
                                      parse_judgment, typecheck_bag, typecheck_seq, typecheck_term)

EQ1 = r"\f:((o->o)->(o->o)->o). f [\x:o.x, \x:o.x] [\y:o. f [] []]"


def test_examples():
    assert typecheck_term(Context(), parse(r"\x:o. x")) == parse_type("o -> o")
    assert typecheck_term(Context(), parse(EQ1)) == parse_type("((o->o)->(o->o)->o)->o")


def test_unapplied_arrow_variable_is_not_eta_long():
    with pytest.raises(NotEtaLong):
        typecheck_term(Context.parse("f:o->o"), parse("f"))


@pytest.mark.parametrize("ctx,text,err", [
    ("", "x", UnboundVariable),
    ("f:o->o", "f [x] [x]", ArityMismatch),
    ("f:o->o, g:o->o", "f [g [x]]", UnboundVariable),
    ("f:(o->o)->o, y:o", "f [y]", DomainMismatch),
    ("y:o", r"(\x:o->o. x [y]) [y]", DomainMismatch),
])
def test_errors(ctx, text, err):
    with pytest.raises(err):
        typecheck_term(Context.parse(ctx), parse(text))
    assert issubclass(err, TypingError)


def test_bags():
    ctx = Context.parse("x:o, f:o->o")
    assert typecheck_bag(ctx, parse_bag("[x, x]"), parse_type("o")) == parse_type("o")
    with pytest.raises(HeterogeneousBag):
        typecheck_bag(ctx, parse_bag(r"[x, \u:o. f [u]]"))
    assert typecheck_bag(Context(), parse_bag("[]"), parse_type("o->o")) == parse_type("o->o")


def test_sequences():
    ctx = Context.parse("x:o")
    types = (parse_type("o"), parse_type("o->o"))
    assert typecheck_seq(ctx, (parse_bag("[x]"), parse_bag(r"[\u:o. u]")), types) == types


def test_context_order_and_duplicates():
    ctx = Context.parse("a:o, b:o->o")
    assert ctx.names == ("a", "b") and ctx.position("b") == 1
    with pytest.raises(ValueError):
        Context.parse("a:o, a:o")


def test_judgment_syntax():
    ctx, text = parse_judgment(r"x:o, f:o->o ⊢ f [x]")
    assert typecheck_term(ctx, parse(text)) == parse_type("o")
    ctx, text = parse_judgment(r"x:o |- x")
    assert ctx.names == ("x",) and text == "x"


def test_is_normal():
    ctx = Context.parse("y:o")
    assert is_normal(Context(), parse(r"\x:o. x"))
    assert not is_normal(ctx, parse(r"(\x:o. x)[y]"))


@given(typed_terms())
def test_subject_reduction(t):
    ty = typecheck_term(CTX, t)
    for reduct in one_step_reducts(t):
        for u in reduct:
            assert typecheck_term(CTX, u) == ty


@given(typed_terms())
def test_normal_forms_have_the_expected_shape(t):
    ty = typecheck_term(CTX, t)
    for u in normalize(t):
        assert is_normal(CTX, u)
        assert typecheck_term(CTX, u) == ty
        if ty == parse_type("o"):
            assert isinstance(u, Var) and typecheck_term(CTX, u) == ty
        else:
            assert isinstance(u, Abs)
