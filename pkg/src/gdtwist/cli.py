"""Command-line front end.

Exit status: 0 success, 1 a check or route comparison failed, 2 usage or
parse error.
"""
from __future__ import annotations

import argparse
import sys
from typing import Dict, List, Optional, Sequence

from . import checks
from .core import LieElement, TensorSeries, is_lie, letter_name, lyndon_str, monomial_str, parse_lie, to_lyndon
from .diagrams import HElement, glue, integrality_check, tau, thmB_value, thmC_value
from .expansion import Expansion, expand, make_expansion
from .free_group import ClassTooLow, GroupWord, ParseError, PlanarTree, decompose, parse_word, phi
from .twist import gdt, gdt_group_formula


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- rendering

def _join(parts: List[str]) -> str:
    out = ""
    for p in parts:
        if not out:
            out = p
        elif p.startswith("- "):
            out += " " + p
        else:
            out += " + " + p
    return out or "0"


def render_series(s: TensorSeries) -> str:
    """Degree by degree; Lie parts are written in the Lyndon bracket basis."""
    parts = []
    for d in range(s.N + 1):
        part = s.degree_part(d)
        if part.is_zero():
            continue
        if d > 0 and is_lie(part):
            lie = to_lyndon(part)
            text, n_terms = str(lie), len(lie.coords)
        else:
            text, n_terms = str(part), len(part.parts[d])
        parts.append(f"({text})" if n_terms > 1 else text)
    return _join(parts)


def structured_series(s: TensorSeries) -> List[str]:
    return [f"degree={len(w)} basis={monomial_str(w)} num={c.numerator} den={c.denominator}"
            for w, c in sorted(s.items(), key=lambda t: (len(t[0]), t[0]))]


def structured_lie(x: LieElement) -> List[str]:
    return [f"degree={len(w)} basis={lyndon_str(w)} num={c.numerator} den={c.denominator}"
            for w, c in sorted(x.coords.items(), key=lambda t: (len(t[0]), t[0]))]


def structured_h(h: HElement) -> List[str]:
    rows = []
    for l, e in sorted(h.comps.items()):
        for w, c in sorted(e.coords.items(), key=lambda t: (len(t[0]), t[0])):
            rows.append(f"degree={h.j} basis={letter_name(l)}(x){lyndon_str(w)} num={c.numerator} den={c.denominator}")
    return rows


# ---------------------------------------------------------------- config

def _word(text: str, genus: int) -> GroupWord:
    return parse_word(text, genus)


def _theta(args, default: str, N: int) -> Expansion:
    return make_expansion(args.expansion or default, args.genus, N)


def _twist_config(args) -> int:
    k = args.k
    if k < 2:
        raise UsageError("--k must be at least 2")
    N = args.degree if args.degree is not None else 2 * k + 1
    if N < k + 2:
        raise UsageError(f"twist commands need N >= k+2 = {k + 2}")
    return N


def _emit(out, lines: Sequence[str]) -> None:
    for ln in lines:
        out.write(ln + "\n")


# ---------------------------------------------------------------- commands

def cmd_expand(args, out) -> int:
    N = args.degree if args.degree is not None else 4
    w = _word(args.word, args.genus)
    s = expand(_theta(args, "standard", N), w)
    _emit(out, structured_series(s) if args.format == "structured" else [render_series(s)])
    return 0


def cmd_twist(args, out) -> int:
    N = _twist_config(args)
    k, eps = args.k, args.framing
    gamma = _word(args.gamma, args.genus)
    xs = [_word(args.x, args.genus)] if args.x else [GroupWord.gen(l) for l in range(2 * args.genus)]
    theta = _theta(args, "symplectic", N)
    F = gdt(theta, gamma, k, eps, N)
    dec = decompose(gamma, k, 2, args.genus)
    ok = True
    for x in xs:
        route1 = F.apply_word(theta, x).truncate(2 * k)
        route2 = gdt_group_formula(dec, x, k, eps, theta, gamma)
        agree = route1 == route2
        ok &= agree
        if args.format == "structured":
            _emit(out, [f"x={x} routes_agree={int(agree)}"] + structured_series(route1))
        else:
            _emit(out, [f"x = {x}", f"routes agree: {'yes' if agree else 'no'}",
                        f"theta(t(x)) mod degree {2 * k + 1}: {render_series(route1)}"])
    return 0 if ok else 1


def cmd_tau(args, out) -> int:
    N = _twist_config(args)
    k = args.k
    theta = _theta(args, "symplectic", N)
    gp = _word(args.gamma, args.genus)
    if args.gamma_minus is None:
        j = 2 * k - 2
        via_tau = tau(gdt(theta, gp, k, args.framing, N), j)
        value = thmB_value(gp, k, args.framing, args.genus)
    else:
        gm = _word(args.gamma_minus, args.genus)
        j = 2 * k - 1
        f = gdt(theta, gm, k, -1, N).compose(gdt(theta, gp, k, 1, N))
        via_tau = tau(f, j)
        value = thmC_value(gp, gm, k, args.genus)
    agree = via_tau == value
    integral = integrality_check(value)
    if args.format == "structured":
        _emit(out, [f"routes_agree={int(agree)} integral={int(integral)} j={j}"] + structured_h(value))
    else:
        _emit(out, [f"routes agree: {'yes' if agree else 'no'}; integral: {'yes' if integral else 'no'}; value:",
                    str(value)])
    return 0 if agree else 1


def cmd_glue(args, out) -> int:
    x = parse_lie(args.x, args.genus)
    y = parse_lie(args.y, args.genus)
    h = glue(x, y)
    _emit(out, structured_h(h) if args.format == "structured" else [str(h)])
    return 0


def _bind(bindings: Sequence[str], genus: int) -> Dict[str, GroupWord]:
    out = {}
    for b in bindings:
        if "=" not in b:
            raise UsageError(f"binding {b!r} is not of the form label=word")
        name, text = b.split("=", 1)
        out[name.strip()] = _word(text, genus)
    return out


def cmd_phi(args, out) -> int:
    """Unbound labels become free generators numbered after the surface letters."""
    T, labels = PlanarTree.parse(args.tree)
    bound = _bind(args.bind or [], args.genus)
    free: Dict[str, int] = {}

    def value(name: str) -> GroupWord:
        if name in bound:
            return bound[name]
        try:
            return parse_word(name, args.genus)
        except ParseError:
            pass
        if name not in free:
            free[name] = 2 * args.genus + len(free)
        return GroupWord.gen(free[name])

    leaves = [value(n) for n in labels]
    h = value(args.h)
    try:
        e = int(args.edge)
    except ValueError:
        raise UsageError(f"edge must be a leaf index, got {args.edge!r}") from None
    if not 0 <= e <= T.n_leaves():
        raise UsageError(f"leaf index {e} out of range 1..{T.n_leaves()}")
    w = phi(T, leaves, h, e if e else ())
    names = {v: n for n, v in free.items()}

    def syl(s: int) -> str:
        l = abs(s) - 1
        if l in names:
            return names[l] if s > 0 else names[l] + "^-1"
        name = letter_name(l)
        return name if s > 0 else name.upper()

    text = " ".join(syl(s) for s in w.syllables) or "1"
    _emit(out, [f"word={text}" if args.format == "structured" else text])
    return 0


def cmd_decompose(args, out) -> int:
    w = _word(args.gamma, args.genus)
    expr = decompose(w, args.k, args.depth, args.genus)
    if args.format == "structured":
        _emit(out, [f"factor={T.render([str(x) for x in leaves])}" for T, leaves in expr.factors])
    else:
        _emit(out, [str(expr)])
    return 0


def cmd_check(args, out) -> int:
    if args.suite not in checks.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; available: {', '.join(checks.SUITES)}")
    cfg = checks.SuiteConfig(genus=args.genus, k=args.k, N=args.degree, seed=args.seed, count=args.count)
    results = checks.run_suite(args.suite, cfg)
    for r in results:
        if args.format == "structured":
            out.write(f"check={r.name} passed={int(r.passed)} detail={r.detail}\n")
        else:
            out.write(r.line() + "\n")
    return 0 if all(r.passed for r in results) else 1


def cmd_expansion(args, out) -> int:
    N = args.degree if args.degree is not None else 5
    out.write(_theta(args, "symplectic", N).dumps())
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int, default=None, help="surface genus (default 1; 2 for check)")
    common.add_argument("--k", type=int, default=2)
    common.add_argument("-N", "--degree", type=int, default=None, help="truncation degree")
    common.add_argument("--framing", type=int, choices=(1, -1), default=1)
    common.add_argument("--expansion", default=None,
                        help="standard, symplectic, symplectic:<variant>, or an expansion file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "structured"), default="text")

    p = argparse.ArgumentParser(prog="gdtwist", description="Generalized Dehn twists on a genus-g surface with one boundary.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", parents=[common], help="expansion of a word")
    s.add_argument("word")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("twist", parents=[common], help="twist image of a word, both routes")
    s.add_argument("gamma")
    s.add_argument("x", nargs="?")
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("tau", parents=[common], help="Johnson image of a twist or of a twist pair")
    s.add_argument("gamma")
    s.add_argument("gamma_minus", nargs="?")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("glue", parents=[common], help="glue two homogeneous Lie elements")
    s.add_argument("x")
    s.add_argument("y")
    s.set_defaults(func=cmd_glue)

    s = sub.add_parser("phi", parents=[common], help="edge commutator of a colored tree")
    s.add_argument("tree")
    s.add_argument("h")
    s.add_argument("edge", help="leaf index (1-based); 0 is the root edge")
    s.add_argument("--bind", action="append", metavar="LABEL=WORD")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("decompose", parents=[common], help="tree-commutator decomposition")
    s.add_argument("gamma")
    s.add_argument("--depth", type=int, choices=(1, 2), default=1)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("check", parents=[common], help="run a check suite")
    s.add_argument("suite")
    s.add_argument("--count", type=int, default=None, help="override the sample size")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("expansion", parents=[common], help="write an expansion file")
    s.set_defaults(func=cmd_expansion)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.genus is None:
        args.genus = 2 if args.command == "check" else 1
    if args.genus < 1:
        sys.stderr.write("gdtwist: error: --genus must be at least 1\n")
        return 2
    try:
        return args.func(args, out)
    except (UsageError, ParseError, ClassTooLow, ValueError, OSError) as e:
        sys.stderr.write(f"gdtwist: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
