"""Command line front end: ``suppos <subcommand> ...``.

Exit status: 0 on success, 1 on a domain error (one ``error: CODE: message``
line on stderr), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import constructions as con
from .monomials import AmbientMismatch, MonomialIdeal, format_ideal, format_monomial, parse_ideal
from .polarity import DepolarizationError, are_copolar, depolarize_by_chains, parse_chains, polarize
from .poset import NotAForest, Poset, format_poset, is_forest, label_key, leaves, parse_poset, to_dot
from .resolution import (OracleLimitError, PIVOT_ORDERS, BettiTable, PivotOrder, betti_oracle,
                         derived_invariants, mvt_bounds, mvt_build, mvt_to_dot, taylor_is_minimal)
from .support import (InvalidFamily, NotSquarefree, SupportFamily, brute_force_realizability,
                      display_labels, ideal_from_sigma, ordered_support_poset, sigma_conditions_hold,
                      support_family, support_poset)


class DomainError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _read_text(src: str) -> str:
    if src == "-":
        return sys.stdin.read()
    if src.lstrip().startswith(("vars:", "elements:", "{")) and not Path(src).exists():
        return src.replace(";", "\n")
    try:
        return Path(src).read_text()
    except OSError as exc:
        raise DomainError("IO_ERROR", str(exc)) from exc


def _load_ideal(src: str) -> MonomialIdeal:
    try:
        return parse_ideal(_read_text(src))
    except DomainError:
        raise
    except ValueError as exc:
        raise DomainError("PARSE_ERROR", str(exc)) from exc


def _load_poset(src: str) -> Poset:
    try:
        return parse_poset(_read_text(src))
    except ValueError as exc:
        raise DomainError("PARSE_ERROR", str(exc)) from exc


def _load_family(src: str) -> SupportFamily:
    try:
        return SupportFamily.from_json(_read_text(src))
    except (ValueError, KeyError) as exc:
        raise DomainError("PARSE_ERROR", f"bad support family: {exc}") from exc


def _write(text: str, dest: str | None, out) -> None:
    if dest is None or dest == "-":
        out.write(text)
    else:
        Path(dest).write_text(text)


def _var_order(text: str | None) -> list[int] | None:
    if not text:
        return None
    return [int(t.strip().lstrip("x")) for t in text.split(",") if t.strip()]


# --- subcommands ----------------------------------------------------------

def cmd_support_poset(args, out):
    I = _load_ideal(args.ideal)
    if args.order:
        P = ordered_support_poset(I, _var_order(args.order))
        labels = None
    else:
        P = support_poset(I)
        labels = display_labels(P)
    if args.dot:
        _write(to_dot(P, labels), args.dot, out)
        if args.dot == "-":
            return
    if args.format == "dot":
        out.write(to_dot(P, labels))
    elif args.format == "json":
        fam = support_family(polarize(I)[0] if not I.is_squarefree() else I)
        out.write(json.dumps({
            "family": json.loads(fam.to_json()),
            "is_forest": is_forest(P),
            "poset": _poset_json(P),
        }) + "\n")
    else:
        if I.is_squarefree():
            fam = support_family(I)
            for i, c in fam.C.items():
                out.write(f"C_{i} = {{{','.join(map(str, sorted(c)))}}}\n")
        out.write(format_poset(P))
        out.write(f"forest: {str(is_forest(P)).lower()}\n")


def _poset_json(P: Poset) -> dict:
    def lab(a):
        return sorted(a) if isinstance(a, frozenset) else a
    cov = sorted(P.covers(), key=lambda e: (label_key(e[0]), label_key(e[1])))
    return {"elements": [lab(a) for a in P.sorted_elements()],
            "covers": [[lab(a), lab(b)] for a, b in cov]}


def _family_ideal(args) -> MonomialIdeal:
    if args.family == "lines":
        return con.lines_depolarized(args.n, args.m)
    if args.family == "diamonds":
        return con.diamonds_depolarized(args.m)
    if args.family == "leaf":
        return con.leaf_ideal(_load_poset(args.forest))
    raise DomainError("INVALID_INPUT", f"unknown family {args.family!r}")


def _formula_totals(args) -> list[int]:
    _need(args, *{"lines": ("n", "m"), "diamonds": ("m",), "leaf": ("forest",)}.get(args.family, ()))
    if args.family == "lines":
        return [con.lines_betti_formula(args.n, args.m, i) for i in range(args.n)]
    if args.family == "diamonds":
        if args.m < 3:
            raise DomainError("FORMULA_UNDEFINED", "diamond formula needs m >= 3; use --method oracle")
        vals = [con.diamonds_betti_formula(args.m, i) for i in range(2 * args.m + 2)]
        while vals and vals[-1] == 0:
            vals.pop()
        return vals
    if args.family == "leaf":
        # the Taylor complex is minimal, so only the total leaf count matters
        g = len(leaves(_load_poset(args.forest)))
        return [con.binom(g, i + 1) for i in range(g)]
    raise DomainError("INVALID_INPUT", "--method formula needs --family lines|diamonds|leaf")


def _pivot_order(args) -> PivotOrder:
    if args.order == "random" and args.seed is None:
        raise SystemExit(_usage_error("the random pivot order requires --seed"))
    return PivotOrder(args.order, args.seed)


def _usage_error(msg: str) -> int:
    sys.stderr.write(f"suppos: usage error: {msg}\n")
    return 2


def _emit_table(name: str, B: BettiTable, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps({"table": name, "entries": B.to_records(), "totals": B.totals()}) + "\n")
    else:
        out.write(f"[{name}]\n" + B.format())


def cmd_betti(args, out):
    if args.method == "formula":
        totals = _formula_totals(args)
        if args.format == "json":
            out.write(json.dumps({"table": "formula", "totals": totals}) + "\n")
        else:
            out.write("[formula]\n" + "d     " + "".join(str(d).rjust(6) for d in range(len(totals)))
                      + "\ntotal " + "".join(str(v).rjust(6) for v in totals) + "\n")
        return
    if not args.ideal and not args.family:
        raise SystemExit(_usage_error("betti needs an ideal file or --family"))
    if not args.ideal:
        _need(args, *{"lines": ("n", "m"), "diamonds": ("m",), "leaf": ("forest",)}[args.family])
    I = _load_ideal(args.ideal) if args.ideal else _family_ideal(args)
    if args.method == "oracle":
        B = betti_oracle(I)
        _emit_table("oracle", B, args.format, out)
        pd, reg = derived_invariants(B)
        if args.format != "json":
            out.write(f"projdim {pd}\nreg {reg}\n")
        return
    order = _pivot_order(args)
    lower, upper = mvt_bounds(I, order)
    _emit_table("mvt-lower", lower, args.format, out)
    _emit_table("mvt-upper", upper, args.format, out)
    if args.dot:
        _write(mvt_to_dot(mvt_build(I, order)), args.dot, out)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise SystemExit(_usage_error(f"{args.command} {getattr(args, 'kind', '')} needs {', '.join(missing)}"))


def cmd_construct(args, out):
    kind = args.kind
    _need(args, *{"lines": ("n", "m"), "diamonds": ("m",), "consecutive-kn": ("k", "n"),
                  "k-out-of-n": ("k", "n")}.get(kind, ()))
    if kind == "lines":
        I = con.lines_depolarized(args.n, args.m) if args.depolarized else con.lines_squarefree(args.n, args.m)
    elif kind == "diamonds":
        I = con.diamonds_depolarized(args.m) if args.depolarized else con.diamonds_squarefree(args.m)
    elif kind == "leaf":
        if not args.forest:
            raise SystemExit(_usage_error("construct leaf needs --forest"))
        I = con.leaf_ideal(_load_poset(args.forest))
    elif kind == "consecutive-kn":
        I = con.copolar_kn(args.k, args.n) if args.depolarized else con.consecutive_kn(args.k, args.n)
    elif kind == "k-out-of-n":
        I = con.k_out_of_n(args.k, args.n)
    elif kind == "sp":
        if not args.expr:
            raise SystemExit(_usage_error("construct sp needs --expr"))
        try:
            I = con.sp_ideal(con.parse_sp(args.expr))
        except con.InvalidExpression as exc:
            raise DomainError("INVALID_EXPRESSION", str(exc)) from exc
    else:
        raise SystemExit(_usage_error(f"unknown construction {kind!r}"))
    _emit_ideal(I, args.format, out)


def _emit_ideal(I: MonomialIdeal, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps({"n": I.n, "gens": [format_monomial(g) for g in I.gens]}) + "\n")
    else:
        out.write(format_ideal(I))


def cmd_polarize(args, out):
    I = _load_ideal(args.ideal)
    P, pmap = polarize(I)
    if args.format == "json":
        out.write(json.dumps({"n": P.n, "gens": [format_monomial(g) for g in P.gens],
                              "slots": [list(s) for s in pmap.slots]}) + "\n")
        return
    for k in range(1, P.n + 1):
        out.write(f"# x{k} = {pmap.name(k)}\n")
    out.write(format_ideal(P))


def cmd_depolarize(args, out):
    I = _load_ideal(args.ideal)
    try:
        J = depolarize_by_chains(I, parse_chains(args.chains))
    except DepolarizationError as exc:
        raise DomainError("DEPOLARIZATION_FAILED", str(exc)) from exc
    except NotSquarefree:
        raise
    except ValueError as exc:
        raise DomainError("INVALID_PARTITION", str(exc)) from exc
    _emit_ideal(J, args.format, out)


def _bool(v: bool) -> str:
    return "true" if v else "false"


def cmd_check(args, out):
    what = args.what
    if what == "forest":
        if args.random_sp is not None:
            if args.seed is None:
                raise SystemExit(_usage_error("--random-sp requires --seed"))
            rng = random.Random(args.seed)
            ok = True
            for _ in range(args.random_sp):
                e = con.random_sp_expr(rng.randint(1, args.max_vars), rng)
                ok &= is_forest(support_poset(con.sp_ideal(e)))
            out.write(_bool(ok) + "\n")
            return
        if args.ideal:
            P = support_poset(_load_ideal(args.ideal))
        elif args.poset:
            P = _load_poset(args.poset)
        else:
            raise SystemExit(_usage_error("check forest needs --ideal, --poset or --random-sp"))
        out.write(_bool(is_forest(P)) + "\n")
    elif what == "copolar":
        if len(args.inputs) != 2:
            raise SystemExit(_usage_error("check copolar needs two ideal files"))
        a, b = (_load_ideal(s) for s in args.inputs)
        out.write(_bool(are_copolar(a, b)) + "\n")
    elif what == "realizable":
        if not args.family:
            raise SystemExit(_usage_error("check realizable needs --family"))
        fam = _load_family(args.family)
        try:
            I = brute_force_realizability(fam)
        except ValueError as exc:
            raise DomainError("TOO_LARGE", str(exc)) from exc
        out.write(_bool(I is not None) + "\n")
        if I is not None:
            out.write(format_ideal(I))
    elif what == "taylor-minimal":
        if not args.ideal:
            raise SystemExit(_usage_error("check taylor-minimal needs --ideal"))
        out.write(_bool(taylor_is_minimal(_load_ideal(args.ideal))) + "\n")
    elif what == "sigma":
        if not (args.family and args.sigma):
            raise SystemExit(_usage_error("check sigma needs --family and --sigma"))
        fam = _load_family(args.family)
        fam.check()
        sigma = parse_chains(args.sigma)
        ok = sigma_conditions_hold(fam, sigma)
        out.write(_bool(ok) + "\n")
        if ok:
            out.write(format_ideal(ideal_from_sigma(fam, sigma)))


def cmd_export(args, out):
    I = _load_ideal(args.ideal)
    if args.what == "mvt":
        order = _pivot_order(args)
        out.write(mvt_to_dot(mvt_build(I, order)))
        return
    if args.what == "family":
        J = I if I.is_squarefree() else polarize(I)[0]
        out.write(support_family(J).to_json() + "\n")
        return
    if args.what == "ordered-poset":
        P, labels = ordered_support_poset(I, _var_order(args.var_order)), None
    else:
        P = support_poset(I)
        labels = display_labels(P)
    if args.format == "dot":
        out.write(to_dot(P, labels))
    elif args.format == "json":
        out.write(json.dumps(_poset_json(P)) + "\n")
    else:
        out.write(format_poset(P))


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="suppos", description="Support posets of monomial ideals.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=("text", "json", "dot")):
        sp.add_argument("--format", choices=choices, default="text")

    sp = sub.add_parser("support-poset", help="support family and support poset of an ideal")
    sp.add_argument("ideal", help="ideal file, '-' for stdin, or an inline 'vars: n; ...' literal")
    sp.add_argument("--order", help="variable order x1,x2,... for the ordered support poset")
    sp.add_argument("--dot", help="write the Hasse diagram as DOT to this file ('-' = stdout)")
    fmt(sp)
    sp.set_defaults(func=cmd_support_poset)

    sp = sub.add_parser("betti", help="Betti numbers by oracle, Mayer-Vietoris tree or formula")
    sp.add_argument("ideal", nargs="?")
    sp.add_argument("--method", choices=("oracle", "mvt", "formula"), default="oracle")
    sp.add_argument("--family", choices=("lines", "diamonds", "leaf"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--forest")
    sp.add_argument("--order", choices=PIVOT_ORDERS, default="canonical")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--dot", help="with --method mvt, dump the tree as DOT")
    fmt(sp, ("text", "json"))
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("construct", help="build one of the explicit ideal families")
    sp.add_argument("kind", choices=("lines", "diamonds", "leaf", "consecutive-kn", "k-out-of-n", "sp"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--forest")
    sp.add_argument("--expr")
    sp.add_argument("--depolarized", action="store_true",
                    help="lines/diamonds: the small copolar ideal; consecutive-kn: its copolar ideal")
    fmt(sp, ("text", "json"))
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("polarize", help="polarize an ideal")
    sp.add_argument("ideal")
    fmt(sp, ("text", "json"))
    sp.set_defaults(func=cmd_polarize)

    sp = sub.add_parser("depolarize", help="depolarize a squarefree ideal along a chain partition")
    sp.add_argument("ideal")
    sp.add_argument("--chains", required=True, help='blocks like "1,2,4|3"')
    fmt(sp, ("text", "json"))
    sp.set_defaults(func=cmd_depolarize)

    sp = sub.add_parser("check", help="boolean checks")
    sp.add_argument("what", choices=("forest", "copolar", "realizable", "taylor-minimal", "sigma"))
    sp.add_argument("inputs", nargs="*")
    sp.add_argument("--ideal")
    sp.add_argument("--poset")
    sp.add_argument("--family", help="support family JSON file")
    sp.add_argument("--sigma", help='collection like "1|2,4|3|5"')
    sp.add_argument("--random-sp", type=int, help="check that this many random expressions all have forest support posets")
    sp.add_argument("--max-vars", type=int, default=8)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("export", help="export a derived structure")
    sp.add_argument("ideal")
    sp.add_argument("--what", choices=("support-poset", "ordered-poset", "family", "mvt"),
                    default="support-poset")
    sp.add_argument("--var-order")
    sp.add_argument("--order", choices=PIVOT_ORDERS, default="canonical")
    sp.add_argument("--seed", type=int)
    fmt(sp, ("text", "json", "dot"))
    sp.set_defaults(func=cmd_export)
    return p


_ERRORS = (
    (NotSquarefree, "NOT_SQUAREFREE"),
    (NotAForest, "NOT_A_FOREST"),
    (InvalidFamily, "INVALID_FAMILY"),
    (OracleLimitError, "ORACLE_LIMIT"),
    (AmbientMismatch, "AMBIENT_MISMATCH"),
    (DepolarizationError, "DEPOLARIZATION_FAILED"),
    (ValueError, "INVALID_INPUT"),
)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except SystemExit as exc:
        return int(exc.code or 0)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc.code}: {exc}\n")
        return 1
    except Exception as exc:
        for cls, code in _ERRORS:
            if isinstance(exc, cls):
                sys.stderr.write(f"error: {code}: {exc}\n")
                return 1
        raise
    return 0


def main() -> None:
    sys.exit(run())
