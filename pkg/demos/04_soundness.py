"""Interpretation is invariant under reduction.

The strategy of any term equals the encoding of its normal form, computed
independently by rewriting.  Substitution also has a semantic counterpart.
"""

import time

from resource_games.interp import (DEFAULT_CONTEXT, check_invariance,
                                   check_normal_form_correspondence, encode_sum,
                                   generate_corpus, interpret_bag, interpret_term,
                                   semantic_substitute)
from resource_games.rewrite import normalize, substitute_term
from resource_games.syntax import parse, parse_bag, parse_type
from resource_games.typecheck import Context, typecheck_term

ctx = DEFAULT_CONTEXT
print("context:", ctx)

t = parse(r"(\k:o->o. g [k [y]] [k [z]]) [\u:o. u, \u:o. h [u]]")
ty = typecheck_term(ctx, t)
nf = normalize(t)
print("term        :", t)
print("normal form :", nf)
print("[[t]] == encoding of normal form:",
      interpret_term(ctx, t).table == encode_sum(ctx, nf, ty).table)
print("every one-step reduct too      :", bool(check_invariance(ctx, t)))

# Substituting a bag for x syntactically or semantically gives the same strategy.
gamma = Context.parse("y:o, z:o, g:o -> o -> o")
o = parse_type("o")
body, bag = parse("g [x] [x]"), parse_bag("[y, z]")
syntactic = encode_sum(gamma, normalize(substitute_term(body, "x", bag)), o)
semantic = semantic_substitute(interpret_term(Context.parse("y:o, z:o, g:o -> o -> o, x:o"), body),
                               interpret_bag(gamma, bag, o), gamma, o)
print("g [x] [x] with [y, z] for x, both ways agree:", semantic.table == syntactic.table)

# A small random corpus; duplicates and annihilations both occur.
start = time.time()
corpus = generate_corpus(60, seed=1)
reports = [check_normal_form_correspondence(ctx, s) for s in corpus]
print("corpus of %d terms: %d agree, %d normalize to 0, %d have a coefficient >= 2 (%.1fs)"
      % (len(corpus), sum(r.ok for r in reports),
         sum(r.details["summands"] == 0 for r in reports),
         sum(r.details["max_coefficient"] >= 2 for r in reports), time.time() - start))
