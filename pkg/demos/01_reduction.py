"""Resource terms, substitution and normal forms.

Run with ``python3 demos/01_reduction.py``.
"""

from resource_games.rewrite import normalize, substitute_term
from resource_games.syntax import parse, parse_bag
from resource_games.typecheck import Context, typecheck_term

ctx = Context.parse("y:o, z:o, g:o -> o -> o")

# A bag is a multiset of arguments; every variable occurrence consumes exactly
# one element of the bag, so substitution sums over all ways of handing them out.
t = parse(r"\f:o->o->o. f [x] [x]")
print("t               =", t)
print("t{[y, z]/x}     =", substitute_term(t, "x", parse_bag("[y, z]")))

# Too few or too many resources annihilate the term.
print("t{[y]/x}        =", substitute_term(t, "x", parse_bag("[y]")))
print("t{[y, y, z]/x}  =", substitute_term(t, "x", parse_bag("[y, y, z]")))

# Reduction is substitution; identical summands add up.
for text in [r"(\x:o. g [x] [x]) [y, z]",
             r"(\x:o. g [x] [x]) [y, y]",
             r"(\x:o. x) []"]:
    s = parse(text)
    print("%-28s : %s  ~>  %s" % (s, typecheck_term(ctx, s), normalize(s)))

# Both reduction orders agree.
s = parse(r"(\k:o->o. g [k [y]] [k [z]]) [\u:o. u, \u:o. u]")
a = normalize(s, strategy="leftmost-outermost")
b = normalize(s, strategy="rightmost-innermost")
print("two orders agree:", a == b, "->", a)
