import pytest
from hypothesis import given

from conftest import CTX, typed_terms
from worked_examples import RUNNING_ARENA, RUNNING_AUG, RUNNING_TERM, RUNNING_TYPE
from resource_games.arena import hom, interpret_context, interpret_type
from resource_games.causal import (Augmentation, canonicalize, enumerate_pointed_isogmentations,
                                   from_key, validate_augmentation)
from resource_games.correspondence import (DecodeError, decode, decode_bag, decode_seq,
                                           decode_term, encode_bag, encode_seq, encode_term,
                                           enumerate_normal_terms)
from resource_games.rewrite import normalize
from resource_games.syntax import Bag, parse, parse_bag, parse_type, var_count
from resource_games.typecheck import Context, typecheck_term

SMALL_FAMILY = ["o -> o", "(o -> o) -> o", "((o -> o) -> o) -> o"]


def arena_for(ctx, ty):
    return hom(interpret_context(Context.parse(ctx) if isinstance(ctx, str) else ctx),
               interpret_type(ty))


def test_running_term_encodes_to_the_hand_built_augmentation():
    iso = encode_term("", RUNNING_TERM)
    assert iso.key == canonicalize(RUNNING_AUG).key
    assert decode_term(RUNNING_AUG, Context(), RUNNING_TYPE) == RUNNING_TERM
    validate_augmentation(RUNNING_ARENA, iso.representative)


def test_identity_has_two_events():
    iso = encode_term("", parse(r"\x:o. x"))
    assert len(iso) == 2 and iso.is_pointed


def test_variable_has_two_events():
    iso = encode_term("y:o", parse("y"))
    assert len(iso) == 2
    assert decode_term(iso, "y:o", parse_type("o")) == parse("y")


def test_empty_bag_is_the_empty_augmentation():
    iso = encode_bag("", Bag([]), parse_type("o -> o"))
    assert len(iso) == 0
    assert decode_bag(iso, Context(), parse_type("o -> o")) == Bag([])


def test_bag_has_one_root_per_element():
    b = parse_bag(r"[\x:o. x, \x:o. x, \x:o. h [x]]")
    iso = encode_bag("h:o->o", b, parse_type("o -> o"))
    assert len(iso.representative.dynamic_roots()) == 3
    assert not iso.is_pointed
    assert decode_bag(iso, "h:o->o", parse_type("o -> o")) == b


def test_sequence_round_trip():
    seq = (parse_bag("[y, y]"), parse_bag("[]"), parse_bag(r"[h [z]]"))
    tys = [parse_type("o")] * 3
    iso = encode_seq(CTX, seq, tys)
    assert decode_seq(iso, CTX, tys) == seq
    assert decode(iso, CTX, tys, kind="seq") == seq


def test_non_normal_terms_are_rejected():
    with pytest.raises(ValueError):
        encode_term("y:o", parse(r"(\x:o. x) [y]"))


def test_decoding_errors():
    with pytest.raises(DecodeError):
        decode_term(Augmentation([], [], []), Context(), parse_type("o"))
    two_heads = encode_bag("y:o", parse_bag("[y, y]"), parse_type("o"))
    with pytest.raises(DecodeError):
        decode_term(two_heads, "y:o", parse_type("o"))
    with pytest.raises(ValueError):
        decode(two_heads, "y:o", parse_type("o"), kind="tree")


@pytest.mark.parametrize("ty", SMALL_FAMILY)
def test_decode_encode_on_all_small_normal_terms(ty):
    ty = parse_type(ty)
    arena = arena_for("", ty)
    terms = enumerate_normal_terms(Context(), ty, 10)
    assert terms
    keys = set()
    for t in terms:
        iso = encode_term("", t, ty)
        assert len(iso) == 2 * var_count(t)
        assert iso.is_pointed
        validate_augmentation(arena, iso.representative)
        assert decode_term(iso, Context(), ty) == t
        keys.add(iso.key)
    assert len(keys) == len(terms)     # injective


@pytest.mark.parametrize("ctx,ty", [("", "(o -> o) -> o"), ("y:o", "o"),
                                    ("h:o->o, y:o", "o"), ("f:(o->o)->o", "o"),
                                    ("", "((o -> o) -> o) -> o")])
def test_encode_decode_on_all_small_isogmentations(ctx, ty):
    ty = parse_type(ty)
    arena = arena_for(ctx, ty)
    keys = enumerate_pointed_isogmentations(arena, 8)
    assert keys
    for key in keys:
        t = decode_term(from_key(key), ctx, ty)
        assert typecheck_term(ctx, t) == ty
        assert encode_term(ctx, t, ty).key == key


def test_enumeration_counts_match_isogmentation_counts():
    # size-bounded terms and event-bounded isogmentations describe the same sets
    ctx, ty = "h:o->o, y:o", parse_type("o")
    # with first-order variables only, size equals the number of occurrences
    by_events = enumerate_pointed_isogmentations(arena_for(ctx, ty), 10)
    terms = enumerate_normal_terms(Context.parse(ctx), ty, 5)
    assert all(var_count(t) <= 5 for t in terms)
    assert len(terms) == len(by_events) == 59
    assert {encode_term(ctx, t, ty).key for t in terms} == set(by_events)


@given(typed_terms(budget=8, redexes=False))
def test_round_trip_on_random_normal_terms(t):
    ty = typecheck_term(CTX, t)
    iso = encode_term(CTX, t, ty)
    assert decode_term(iso, CTX, ty) == t
    assert len(iso) == 2 * var_count(t)


@given(typed_terms(budget=9))
def test_normal_forms_encode_to_valid_augmentations(t):
    ty = typecheck_term(CTX, t)
    arena = arena_for(CTX, ty)
    for u in normalize(t):
        iso = encode_term(CTX, u, ty)
        validate_augmentation(arena, iso.representative)


@given(typed_terms(budget=7, redexes=False), typed_terms(budget=7, redexes=False))
def test_encoding_is_injective(t, u):
    tt, tu = typecheck_term(CTX, t), typecheck_term(CTX, u)
    if tt != tu:
        return
    assert (encode_term(CTX, t, tt) == encode_term(CTX, u, tu)) == (t == u)


def test_binder_clashing_with_context_is_renamed():
    t = parse(r"\y:o. g [y] [y]")
    iso = encode_term("y:o, g:o->o->o", t)
    back = decode_term(iso, "y:o, g:o->o->o", parse_type("o -> o"))
    assert back == t
