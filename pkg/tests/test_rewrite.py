import math
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as hs

from conftest import CTX, SMALL_TYPES, typed_terms
from oracles import all_assignments, substitute_by_assignment
from resource_games.interp import generate_corpus
from resource_games.rewrite import (FuelExhausted, NoRedex, enumerate_partitionings,
                                    normalize, occurrences, one_step_reducts, reduce_step,
                                    substitute_bag, substitute_seq, substitute_term)
from resource_games.syntax import Bag, Sum, parse, parse_bag
from resource_games.typecheck import Context, is_normal, typecheck_term


def P(text):
    return parse(text)


def test_partitionings_of_empty_bag():
    assert enumerate_partitionings(Bag([]), 2) == [(Bag([]), Bag([]))]


def test_partitionings_match_assignment_functions():
    y, z = P("y"), P("z")
    got = Counter(enumerate_partitionings(Bag([y, z]), 2))
    want = Counter()
    for f in all_assignments(2, 2):
        blocks = [[], []]
        for elem, block in zip((y, z), f):
            blocks[block].append(elem)
        want[tuple(Bag(b) for b in blocks)] += 1
    assert got == want and sum(got.values()) == 4


def test_repeated_elements_are_partitioned_by_position():
    got = Counter(enumerate_partitionings(parse_bag("[y, y]"), 2))
    assert got[(parse_bag("[y]"), parse_bag("[y]"))] == 2
    assert sum(got.values()) == 4


@given(hs.lists(hs.sampled_from("abc"), max_size=4), hs.integers(1, 3))
def test_partitioning_count_and_union(names, k):
    b = Bag(P(n) for n in names)
    parts = enumerate_partitionings(b, k)
    assert len(parts) == k ** len(names)
    for blocks in parts:
        assert len(blocks) == k
        assert Counter(e for blk in blocks for e in blk.elements) == Counter(b.elements)


def test_substitution_running_example():
    t = P(r"\f:o->o->o. f [x] [x]")
    got = substitute_term(t, "x", parse_bag("[y, z]"))
    assert got == Sum.of(P(r"\f:o->o->o. f [y] [z]"), P(r"\f:o->o->o. f [z] [y]"))


def test_substitution_variable_cases():
    assert substitute_term(P("y"), "x", Bag([])) == Sum.of(P("y"))
    assert substitute_term(P("x"), "x", Bag([])) == Sum()
    assert substitute_term(P("x"), "x", parse_bag("[y]")) == Sum.of(P("y"))
    assert substitute_term(P("y"), "x", parse_bag("[y]")) == Sum()


def test_starved_occurrence_gives_zero():
    t = P(r"\f:o->o->o. f [x] [x]")
    assert substitute_term(t, "x", parse_bag("[y]")) == Sum()
    assert substitute_by_assignment(t, "x", [P("y")]) == Sum()


def test_substitution_avoids_capture():
    got = substitute_term(P(r"\y:o. g [x] [y]"), "x", parse_bag("[y]"))
    (u,) = got
    assert u == P(r"\w:o. g [y] [w]")


def test_substitution_in_bags_and_sequences():
    b = parse_bag("[x, h [x]]")
    assert substitute_bag(b, "x", parse_bag("[y, z]")) == Sum.of(parse_bag("[y, h [z]]"),
                                                                 parse_bag("[z, h [y]]"))
    seq = (parse_bag("[x]"), parse_bag("[]"))
    assert substitute_seq(seq, "x", parse_bag("[y]")) == Sum.of((parse_bag("[y]"), parse_bag("[]")))


def test_reduce_step_examples():
    assert reduce_step(P(r"(\x:o. x) [y]")) == Sum.of(P("y"))
    assert reduce_step(P(r"(\x:o. g [x] [x]) [y, z]")) == Sum.of(P("g [y] [z]"), P("g [z] [y]"))
    with pytest.raises(NoRedex):
        reduce_step(P(r"\x:o. x"))


def test_normalize_examples():
    t = P(r"\x:o. h [x]")
    assert normalize(Sum([(t, 3)])) == Sum([(t, 3)])
    six = normalize(P(r"(\x:o. k [x] [x] [x]) [a, b, c]"))
    assert len(six) == 6 and set(six.terms.values()) == {1}
    assert normalize(P(r"(\x:o. x) []")) == Sum()
    assert normalize(P(r"(\x:o. g [x] [x]) [y, y]")) == Sum([(P("g [y] [y]"), 2)])


def test_fuel_exhaustion():
    with pytest.raises(FuelExhausted):
        normalize(P(r"(\x:o. (\u:o. u) [x]) [y]"), fuel=1)


@given(typed_terms(ctx=Context(CTX.bindings + (("x", SMALL_TYPES[0]),)), ty=SMALL_TYPES[0], budget=7),
       hs.lists(typed_terms(ty=SMALL_TYPES[0], budget=3), max_size=3))
def test_substitution_matches_assignment_oracle(t, elems):
    assert substitute_term(t, "x", Bag(elems)) == substitute_by_assignment(t, "x", elems)


@given(typed_terms(ctx=Context(CTX.bindings + (("x", SMALL_TYPES[1]),)), budget=8),
       hs.lists(typed_terms(ty=SMALL_TYPES[1], budget=4), max_size=3))
def test_substitution_matches_oracle_at_arrow_type(t, elems):
    k = occurrences(t, "x")
    elems = (elems * 3)[:k] if elems else elems
    assert substitute_term(t, "x", Bag(elems)) == substitute_by_assignment(t, "x", elems)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_distinct_resources_give_n_factorial_summands(n):
    names = ["a%d" % i for i in range(n)]
    ctx = Context.parse(", ".join(["k:" + " -> ".join(["o"] * (n + 1))] + [a + ":o" for a in names]))
    body = "k " + " ".join("[x]" for _ in range(n))
    got = normalize(P(r"(\x:o. %s) [%s]" % (body, ", ".join(names))))
    assert len(got) == math.factorial(n) and set(got.terms.values()) == {1}
    for u in got:
        typecheck_term(ctx, u)


@given(typed_terms(ctx=Context(CTX.bindings + (("x", SMALL_TYPES[1]),)), budget=8),
       hs.lists(typed_terms(ty=SMALL_TYPES[1], budget=4), max_size=2))
def test_substitution_preserves_types(t, elems):
    ctx = Context(CTX.bindings + (("x", SMALL_TYPES[1]),))
    ty = typecheck_term(ctx, t)
    for u in substitute_term(t, "x", Bag(elems)):
        assert typecheck_term(CTX, u) == ty


def test_confluence_on_random_corpus():
    for t in generate_corpus(100, seed=11):
        a = normalize(t, strategy="leftmost-outermost")
        b = normalize(t, strategy="rightmost-innermost")
        assert a == b
        assert all(is_normal(CTX, u) for u in a)


@given(typed_terms())
def test_one_step_reducts_reach_the_same_normal_form(t):
    nf = normalize(t)
    for r in one_step_reducts(t):
        assert normalize(r) == nf
