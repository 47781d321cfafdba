"""Normal terms as causal structures on arenas.

Every normal term becomes a pointed augmentation on the arena of its typing
judgment, and can be read back.  Symmetries of configurations count the ways
the copies of a resource can be exchanged.
"""

from resource_games.arena import EMPTY, hom, interpret_context, interpret_type
from resource_games.causal import (Configuration, augmentation_to_dot, canonicalize,
                                   enumerate_pointed_isogmentations, enumerate_symmetries,
                                   from_key, sym_count_formula, union_star)
from resource_games.correspondence import decode_term, encode_term
from resource_games.syntax import parse, parse_type
from resource_games.typecheck import Context

t = parse(r"\f:((o->o)->(o->o)->o). f [\x:o. x, \x:o. x] [\y:o. f [] []]")
ty = parse_type("((o->o)->(o->o)->o)->o")
iso = encode_term("", t)
print("term        :", t)
print("events      :", len(iso), "(two per variable occurrence)")
q = iso.representative
for e in range(len(q)):
    print("   %d  display %-16s static parent %2d  dynamic parent %2d"
          % (e, q.display[e], q.sparent[e], q.dparent[e]))
print("decoded     :", decode_term(iso, "", ty))

# Renaming events does not change the canonical key.
perm = list(reversed(range(len(q))))
print("key stable under relabelling:", canonicalize(q.relabel(perm)).key == iso.key)

# Two independent copies of the only move of o can be swapped in two ways.
qq = Configuration([(), ()], [-1, -1])
print("|Sym qq| =", len(enumerate_symmetries(qq, qq)))
x = union_star(qq, Configuration([(), ()], [-1, -1]))
print("|Sym q^4| =", len(enumerate_symmetries(x, x)), "closed form:", sym_count_formula(x))

# Enumerate every pointed structure up to 6 events; each decodes to a distinct term.
ctx = Context.parse("h:o->o, y:o")
arena = hom(interpret_context(ctx), interpret_type(parse_type("o")))
keys = enumerate_pointed_isogmentations(arena, 6)
print("h:o->o, y:o |- o, at most 6 events:")
for key in keys:
    print("   ", decode_term(from_key(key), ctx, parse_type("o")))

# Graphviz source for the identity (dotted: static order, solid: dynamic order).
print()
print(augmentation_to_dot(encode_term("", parse(r"\x:o. x")).representative,
                          hom(EMPTY, interpret_type(parse_type("o -> o")))))
