"""Command-line entry point.

Exit codes: 0 on success, 1 when a check fails, 2 on usage, parse or type errors.
"""

import argparse
import json
import sys

from . import arena as ar
from . import strategy as st
from .causal import (Augmentation, ValidityError, augmentation_from_json, augmentation_to_dot,
                     augmentation_to_json, validate_augmentation)
from .correspondence import DecodeError, decode, encode_bag, encode_term
from .interp import (DEFAULT_CONTEXT, check_normal_form_correspondence,
                     generate_corpus, interpret_term)
from .rewrite import STRATEGIES, FuelExhausted, normalize
from .syntax import ParseError, parse, parse_bag, parse_type, print_type
from .typecheck import Context, TypingError, is_normal, typecheck_bag, typecheck_term


class UsageError(Exception):
    pass


def _ctx(args):
    return Context.parse(args.ctx or "")


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _interface_arena(text):
    """A context (``x:A, ...``) or a type; the empty string is the unit."""
    text = text.strip()
    if not text:
        return ar.EMPTY
    if ":" in text:
        return ar.interpret_context(Context.parse(text))
    return ar.interpret_type(parse_type(text))


def _judgment_arena(ctx, ty):
    return ar.hom(ar.interpret_context(ctx), ar.interpret_type(ty))


def _strategy_lines(sigma, ctx, ty):
    """One line per isogmentation: coefficient, then the normal term it encodes."""
    rows = []
    for k, c in sigma.table.items():
        try:
            label = str(decode(st._rep(k), ctx, ty))
        except DecodeError:
            label = repr(k)
        rows.append((label, str(c)))
    rows.sort()
    if not rows:
        return "0"
    return "\n".join("%s\t%s" % (c, label) for label, c in rows)


# ---------------------------------------------------------------------------
# Subcommands

def cmd_parse(args):
    if args.bag:
        b = parse_bag(args.term)
        _emit(args, {"kind": "bag", "text": str(b)}, str(b))
    else:
        t = parse(args.term)
        _emit(args, {"kind": "term", "text": str(t)}, str(t))
    return 0


def cmd_typecheck(args):
    ctx = _ctx(args)
    if args.bag:
        b = parse_bag(args.term)
        ty = typecheck_bag(ctx, b, parse_type(args.type) if args.type else None)
        text = "empty bag" if ty is None else print_type(ty)
    else:
        ty = typecheck_term(ctx, parse(args.term))
        text = print_type(ty)
    _emit(args, {"context": str(ctx), "type": None if ty is None else print_type(ty)}, text)
    return 0


def cmd_normalize(args):
    ctx = _ctx(args)
    t = parse(args.term)
    typecheck_term(ctx, t)
    nf = normalize(t, fuel=args.fuel, strategy=args.strategy)
    rows = sorted((str(u), str(c)) for u, c in nf.items())
    _emit(args, {"summands": [{"term": u, "coefficient": c} for u, c in rows]}, str(nf))
    return 0


def cmd_encode(args):
    ctx = _ctx(args)
    if args.bag:
        if not args.type:
            raise UsageError("--bag needs --type")
        ty = parse_type(args.type)
        b = parse_bag(args.term)
        typecheck_bag(ctx, b, ty)
        iso = encode_bag(ctx, b, ty)
    else:
        t = parse(args.term)
        ty = typecheck_term(ctx, t)
        if args.type and parse_type(args.type) != ty:
            raise TypingError("term has type %s" % print_type(ty))
        if not is_normal(ctx, t):
            raise UsageError("only normal terms can be encoded; normalize first")
        iso = encode_term(ctx, t, ty)
    data = augmentation_to_json(iso.representative, _arena_text(ctx, ty))
    print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
    return 0


def _arena_text(ctx, ty):
    return "%s |- %s" % (ctx, print_type(ty))


def cmd_decode(args):
    ctx = _ctx(args)
    ty = parse_type(args.type)
    q = augmentation_from_json(_read(args.file))
    validate_augmentation(_judgment_arena(ctx, ty), q)
    out = decode(q, ctx, ty, "bag" if args.bag else "term")
    _emit(args, {"kind": "bag" if args.bag else "term", "text": str(out)}, str(out))
    return 0


def cmd_interpret(args):
    ctx = _ctx(args)
    t = parse(args.term)
    ty = typecheck_term(ctx, t)
    sigma = interpret_term(ctx, t)
    if args.json:
        print(json.dumps(st.strategy_to_json(sigma, str(ctx), print_type(ty)),
                         indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(_strategy_lines(sigma, ctx, ty))
    return 0


def _load_strategy(path):
    data = json.loads(_read(path))
    iface = data["interface"]
    left, right = _interface_arena(iface["left"]), _interface_arena(iface["right"])
    return st.strategy_from_json(data, left, right), iface


def _as_component(sigma):
    table = {}
    for k, c in sigma.table.items():
        q = st._rep(k)
        disp = [(2, 1) + d[1:] if d[0] == 2 else d for d in q.display]
        table[Augmentation(disp, q.sparent, q.dparent).key] = c
    return st.Strategy(sigma.left, ar.tensor(sigma.right), table)


def cmd_compose(args):
    tau, tau_if = _load_strategy(args.tau)
    sigma, sigma_if = _load_strategy(args.sigma)
    if sigma.right != tau.left and ar.tensor(sigma.right) == tau.left:
        # a one-variable context on the left of tau: tag sigma's outputs with 1
        sigma = _as_component(sigma)
    if sigma.right != tau.left:
        raise UsageError("interfaces do not match: %r then %r"
                         % (sigma_if["right"], tau_if["left"]))
    out = st.compose(tau, sigma)
    data = st.strategy_to_json(out, sigma_if["left"], tau_if["right"])
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        lines = ["%s\t%s" % (e["coefficient"], json.dumps(e["augmentation"]["events"],
                                                          sort_keys=True))
                 for e in data["entries"]]
        print("\n".join(lines) if lines else "0")
    return 0


def cmd_check_laws(args):
    a = ar.interpret_type(parse_type(args.arena))
    names = set(args.law) if args.law else None
    if names:
        unknown = names - set(st.law_suite(a))
        if unknown:
            raise UsageError("unknown law(s): %s" % ", ".join(sorted(unknown)))
    results = st.check_laws(a, args.window, names)
    failed = [n for n, r in results if not r]
    data = {"arena": args.arena, "window": args.window,
            "laws": [{"name": n, "ok": bool(r), "checked": r.checked,
                      "counterexample": None if r else repr(r.counterexample)}
                     for n, r in results]}
    text = "\n".join("%s  %s (%d checked)" % ("PASS" if r else "FAIL", n, r.checked)
                     for n, r in results)
    _emit(args, data, text)
    return 1 if failed else 0


def cmd_soundness(args):
    ctx = Context.parse(args.ctx) if args.ctx else DEFAULT_CONTEXT
    corpus = generate_corpus(args.corpus, seed=args.seed, ctx=ctx, max_size=args.max_size)
    failures, multi, zero = [], 0, 0
    for t in corpus:
        r = check_normal_form_correspondence(ctx, t)
        if not r:
            failures.append(r)
        if r.details["max_coefficient"] >= 2:
            multi += 1
        if r.details["summands"] == 0:
            zero += 1
    data = {"corpus": len(corpus), "seed": args.seed, "context": str(ctx),
            "passed": len(corpus) - len(failures), "failed": len(failures),
            "with_coefficient_at_least_2": multi, "normalizing_to_zero": zero,
            "failures": [f.to_json() for f in failures]}
    text = ["%d/%d terms agree (%d with a coefficient >= 2, %d normalizing to 0)"
            % (data["passed"], len(corpus), multi, zero)]
    for f in failures:
        text.append("MISMATCH %s" % f.subject)
        for k, a, b in f.mismatches:
            text.append("  %r: expected %s, got %s" % (k, a, b))
    _emit(args, data, "\n".join(text))
    return 1 if failures else 0


def cmd_export_dot(args):
    if args.type and not args.term and not args.augmentation:
        print(ar.interpret_type(parse_type(args.type)).to_dot())
        return 0
    ctx = _ctx(args)
    if args.augmentation:
        if not args.type:
            raise UsageError("--augmentation needs --type")
        ty = parse_type(args.type)
        q = augmentation_from_json(_read(args.augmentation))
    elif args.term:
        t = parse(args.term)
        ty = typecheck_term(ctx, t)
        if not is_normal(ctx, t):
            raise UsageError("only normal terms can be drawn; normalize first")
        q = encode_term(ctx, t, ty).representative
    else:
        raise UsageError("give a term, --augmentation FILE, or --type alone for an arena")
    print(augmentation_to_dot(q, _judgment_arena(ctx, ty)))
    return 0


# ---------------------------------------------------------------------------
# Argument parsing

def build_parser():
    p = argparse.ArgumentParser(prog="resource-games",
                                description="Resource lambda-calculus and its causal game semantics.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    sp = add("parse", cmd_parse, "parse and pretty-print a term or bag")
    sp.add_argument("term")
    sp.add_argument("--bag", action="store_true", help="parse a bag instead of a term")

    sp = add("typecheck", cmd_typecheck, "infer the type of a term or bag")
    sp.add_argument("term")
    sp.add_argument("--ctx", default="", help='typing context, e.g. "y:o, f:o->o"')
    sp.add_argument("--bag", action="store_true")
    sp.add_argument("--type", help="expected element type (bags)")

    sp = add("normalize", cmd_normalize, "normal form as a formal sum")
    sp.add_argument("term")
    sp.add_argument("--ctx", default="")
    sp.add_argument("--strategy", choices=sorted(STRATEGIES), default="leftmost-outermost")
    sp.add_argument("--fuel", type=int, default=10 ** 6)

    sp = add("encode", cmd_encode, "augmentation of a normal term (JSON)")
    sp.add_argument("term")
    sp.add_argument("--ctx", default="")
    sp.add_argument("--type")
    sp.add_argument("--bag", action="store_true")

    sp = add("decode", cmd_decode, "normal term of an augmentation given as JSON")
    sp.add_argument("file", help="JSON file, or - for stdin")
    sp.add_argument("--ctx", default="")
    sp.add_argument("--type", required=True)
    sp.add_argument("--bag", action="store_true")

    sp = add("interpret", cmd_interpret, "strategy interpreting a term")
    sp.add_argument("term")
    sp.add_argument("--ctx", default="")

    sp = add("compose", cmd_compose, "compose two strategies given as JSON (TAU after SIGMA)")
    sp.add_argument("tau")
    sp.add_argument("sigma")

    sp = add("check-laws", cmd_check_laws, "bialgebra and pointed-identity laws up to a window")
    sp.add_argument("--arena", default="o", help="a type, e.g. o->o")
    sp.add_argument("--window", type=int, default=6)
    sp.add_argument("--law", action="append", help="restrict to a named law (repeatable)")

    sp = add("soundness", cmd_soundness, "interpretation against normal forms on a random corpus")
    sp.add_argument("--corpus", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--ctx", default="")
    sp.add_argument("--max-size", type=int, default=14)

    sp = add("export-dot", cmd_export_dot, "Graphviz rendering of an arena or augmentation")
    sp.add_argument("term", nargs="?")
    sp.add_argument("--ctx", default="")
    sp.add_argument("--type")
    sp.add_argument("--augmentation", help="JSON file, or - for stdin")
    return p


USER_ERRORS = (ParseError, TypingError, DecodeError, ValidityError, UsageError,
               FuelExhausted, ar.ArenaError, ValueError, KeyError, OSError)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except USER_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def run(argv=None):
    """Exit code of running the command line ``argv`` (argparse errors give 2)."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
