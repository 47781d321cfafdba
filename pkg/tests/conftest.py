import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as hs

from resource_games.syntax import Abs, App, Bag, Var, fresh_name, parse_type, split_type
from resource_games.typecheck import Context

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_TYPES = tuple(parse_type(t) for t in ("o", "o -> o", "(o -> o) -> o", "o -> o -> o"))
CTX = Context.parse("y:o, z:o, h:o -> o, g:o -> o -> o, f:(o -> o) -> o")


@hs.composite
def typed_terms(draw, ctx=CTX, ty=None, budget=8, redexes=True):
    """Random well-typed terms, built by type-directed choices."""
    if ty is None:
        ty = draw(hs.sampled_from(SMALL_TYPES))
    binders = []
    for dom in split_type(ty):
        name = fresh_name("x", set(ctx.names) | {b for b, _ in binders})
        binders.append((name, dom))
    inner = Context(ctx.bindings + tuple(binders))
    body = draw(_base_terms(inner, max(1, budget - len(binders)), redexes))
    for name, dom in reversed(binders):
        body = Abs(name, dom, body)
    return body


@hs.composite
def _base_terms(draw, ctx, budget, redexes):
    if redexes and budget >= 4 and draw(hs.integers(0, 2)) == 0:
        a = draw(hs.sampled_from(SMALL_TYPES[:2]))
        name = fresh_name("v", set(ctx.names))
        inner = Context(ctx.bindings + ((name, a),))
        body = draw(_base_terms(inner, budget // 2, redexes))
        k = draw(hs.integers(0, 2))
        elems = [draw(typed_terms(ctx, a, max(1, budget // 4), redexes)) for _ in range(k)]
        if k == 2 and draw(hs.booleans()):
            elems[1] = elems[0]
        return App(Abs(name, a, body), Bag(elems))
    usable = [(n, t) for n, t in ctx.bindings if len(split_type(t)) < budget]
    name, ty = draw(hs.sampled_from(usable or list(ctx.bindings)))
    args = []
    left = budget - 1
    for dom in split_type(ty):
        k = draw(hs.integers(0, 2 if left > 2 else 1))
        elems = [draw(typed_terms(ctx, dom, max(1, left // (2 * max(k, 1))), redexes))
                 for _ in range(k)]
        args.append(Bag(elems))
    return Var(name, tuple(args))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
