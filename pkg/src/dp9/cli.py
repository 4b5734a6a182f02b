"""Command-line interface: ``dp9 <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
Expressions that start with ``-`` must follow ``--`` so argparse does not
read them as options, e.g. ``dp9 mw neg -- "-e1 - e7 + l"``.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import geometry
from .fourier_mukai import cohomology_basis, fm, fm_inv, t_b
from .isometries import BUILTIN_NAMES, apply_map, builtin_map
from .lattice import BASIS_NAMES, E
from .mordell_weil import SectionClass, mw_add, mw_neg, mw_normalize
from .parser import format_class, format_h2, parse_class, parse_h2
from .spectral import picw_contains, picw_index_in_perp, t_full_on_multiple_of_section, t_tilde
from .verify import DEFAULT_SEED, SEED_ENV, run_verification

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2

COHOMOLOGY_MAPS = {"fm": fm, "fm_inv": fm_inv, "t_b": t_b}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _expr(words: List[str]) -> str:
    return " ".join(words)


def cmd_tables(args) -> int:
    print("# Table 1: pullbacks on H^2")
    for name in BUILTIN_NAMES:
        m = builtin_map(name)
        for i, b in enumerate(BASIS_NAMES):
            print(f"{name}\t{b}\t{format_h2(m(E[i]))}")
    print("# Table 2: fm and fm_inv")
    for b, c in cohomology_basis():
        print(f"{b}\t{format_class(fm(c))}\t{format_class(fm_inv(c))}")
    print("# Table 3: t_b = fm_inv . tau^* . fm")
    for b, c in cohomology_basis():
        print(f"{b}\t{format_class(t_b(c))}")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verification(seed=args.seed)
    print(report.verbose() if args.verbose else "\n".join(report.lines()))
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_act(args) -> int:
    c = parse_class(_expr(args.expr))
    if args.map in COHOMOLOGY_MAPS:
        out = COHOMOLOGY_MAPS[args.map](c)
    else:
        out = apply_map(builtin_map(args.map), c)
    print(format_class(out))
    return EXIT_OK


def cmd_spectral(args) -> int:
    if args.line is not None:
        d = parse_h2(args.line)
        print(f"t_tilde\t{format_h2(t_tilde(d))}")
        print(f"in_picw\t{'yes' if picw_contains(d) else 'no'}")
        return EXIT_OK
    if args.mult is None or args.section is None:
        raise ValueError("spectral needs --line, or both --mult and --section")
    img = t_full_on_multiple_of_section(args.mult, parse_h2(args.section))
    print(f"h0\t{format_h2(img.h0)}")
    print(f"torsion\to1^{img.torsion_o1} o2^{img.torsion_o2}")
    return EXIT_OK


def cmd_mw(args) -> int:
    xs = [parse_h2(e) for e in args.exprs]
    want = {"add": 2, "neg": 1, "normalize": 1}[args.op]
    if len(xs) != want:
        raise ValueError(f"mw {args.op} takes {want} expression(s), got {len(xs)}")
    if args.op == "add":
        out = mw_add(SectionClass(xs[0]), SectionClass(xs[1]))
    elif args.op == "neg":
        out = mw_neg(SectionClass(xs[0]))
    else:
        out = mw_normalize(xs[0])
    print(format_h2(out.cls))
    return EXIT_OK


def cmd_picw(args) -> int:
    if args.op == "index":
        if args.expr:
            raise ValueError("picw index takes no expression")
        print(picw_index_in_perp())
        return EXIT_OK
    if not args.expr:
        raise ValueError("picw contains needs an expression")
    print("yes" if picw_contains(parse_h2(_expr(args.expr))) else "no")
    return EXIT_OK


def _read_form(path: str) -> geometry.BinaryForm:
    with open(path, encoding="utf-8") as fh:
        forms = geometry.read_forms(fh.read())
    if len(forms) != 1:
        raise ValueError(f"{path}: expected exactly one form, found {len(forms)}")
    return forms[0]


def cmd_weierstrass(args) -> int:
    g2, g3 = _read_form(args.g2), _read_form(args.g3)
    prof = geometry.fiber_profile(g2, g3)
    print(f"discriminant\t{geometry.discriminant(g2, g3).to_line()}")
    print("profile\t" + " ".join(f"{k}x{n}" for k, n in prof.profile))
    print(f"additive\t{'yes' if prof.additive_flag else 'no'}")
    inv = geometry.is_tau_invariant(g2) and geometry.is_tau_invariant(g3)
    print(f"tau_invariant\t{'yes' if inv else 'no'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dp9", description="Exact cohomology of a special rational elliptic surface.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("tables", help="print the recomputed action tables").set_defaults(func=cmd_tables)

    v = sub.add_parser("verify", help="run the verification report",
                       description=f"Seed defaults to ${SEED_ENV}, else {DEFAULT_SEED}.")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("act", help="apply a map to a cohomology class")
    a.add_argument("--map", required=True, choices=BUILTIN_NAMES + tuple(COHOMOLOGY_MAPS))
    a.add_argument("expr", nargs="+")
    a.set_defaults(func=cmd_act)

    s = sub.add_parser("spectral", help="spectral involution on line bundles")
    s.add_argument("--line", help="class L; prints t_tilde(L) and Pic^W membership")
    s.add_argument("--mult", type=int, help="a >= 0 in O(-a xi)")
    s.add_argument("--section", help="section class xi")
    s.set_defaults(func=cmd_spectral)

    m = sub.add_parser("mw", help="Mordell-Weil group operations")
    m.add_argument("op", choices=("add", "neg", "normalize"))
    m.add_argument("exprs", nargs="+", help="one quoted expression per operand")
    m.set_defaults(func=cmd_mw)

    w = sub.add_parser("picw", help="the lattice Pic^W")
    w.add_argument("op", choices=("contains", "index"))
    w.add_argument("expr", nargs="*")
    w.set_defaults(func=cmd_picw)

    g = sub.add_parser("weierstrass", help="discriminant profile of Weierstrass data")
    g.add_argument("--g2", required=True, help="file with one degree-4 form")
    g.add_argument("--g3", required=True, help="file with one degree-6 form")
    g.set_defaults(func=cmd_weierstrass)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"dp9: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
