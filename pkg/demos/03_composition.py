"""Composing strategies by interaction.

A strategy is a finite sum of isogmentations with rational coefficients.
Composition matches the two sides over every symmetry of the shared
position and keeps the visible part.
"""

from resource_games.arena import BASE, interpret_type, tensor
from resource_games.causal import Augmentation, canonicalize, from_key, sym_count
from resource_games.correspondence import decode_term, encode_term
from resource_games.interp import interpret_term
from resource_games.strategy import (Strategy, apply_kernel, check_laws, compose, identity,
                                     left_position, right_position)
from resource_games.syntax import parse, parse_type
from resource_games.typecheck import Context

# q on o ⊗ o |- o calls each of its two inputs once; p uses its free z twice.
q = Augmentation([(2, 1), (1, 1), (2, 1), (1, 2)], [-1, -1, -1, -1], [-1, 0, -1, 2])
p = encode_term("z:o", parse(r"\f:o->o->o. f [z] [z]")).representative
left, middle, right = tensor(BASE, BASE), tensor(BASE), interpret_type(parse_type("(o->o->o)->o"))

# The shared position has two symmetries, one per way of matching the calls.
shared = right_position(canonicalize(q).key)
print("shared position matches:", shared == left_position(canonicalize(p).key),
      "| symmetries of it:", sym_count(shared))

sq = Strategy.single(left, middle, canonicalize(q).key)
sp = Strategy.single(middle, right, canonicalize(p).key)
result = compose(sp, sq)
ctx = Context.parse("u:o, v:o")
print("p after q has %d summands:" % len(result.table))
for key, c in sorted(result.table.items(), key=repr):
    print("   %s * %s" % (c, decode_term(from_key(key), ctx, parse_type("(o->o->o)->o"))))

# Composition agrees with the interpretation of the corresponding redex.
gamma = Context.parse("u:o, v:o")
print("agrees with the redex:",
      result.table == interpret_term(gamma, parse(r"(\z:o. \f:o->o->o. f [z] [z]) [u, v]")).table)

# Identity kernels are lazy; composing with them leaves a strategy unchanged.
arena = interpret_type(parse_type("o -> o"))
sigma = interpret_term("", parse(r"\x:o. x"))
print("id after sigma == sigma:", apply_kernel(identity(arena), sigma, side="right").table
      == sigma.table)

# Algebraic laws, compared on every isogmentation of up to 4 events.
for name, res in check_laws(BASE, window=4):
    print("   %-24s %s" % (name, "holds" if res else "fails at %r" % (res.counterexample,)))
