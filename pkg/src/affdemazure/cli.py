"""Command-line front end: ``affdemazure {char,demazure,gen-demazure,verify}``.

Exit status is 0 on success, 1 when a verification case fails and 2 for
usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import demazure as dz
from .affring import AffWeight, CharElement, format_weight
from .affweyl import AffWeylElement, LatticeError, UnsupportedInputError
from .cache import default_cache_dir
from .rootsys import RootSystemError, build_root_system, parse_weight
from .theorems import SUITES, GridConfig, run_suite, w0_translation

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- rendering -----------------------------------------------------------------

def _fin(fin) -> str:
    return "(" + ",".join(str(x) for x in fin) + ")"


def _latex_mono(fin, coeff, grade=None) -> str:
    c = "" if coeff == 1 else ("-" if coeff == -1 else str(coeff))
    q = "" if grade is None else f"q^{{{grade}}}"
    return f"{c}{q}e^{{{_fin(fin)}}}"


def _latex_sum(terms) -> str:
    out = " + ".join(terms) if terms else "0"
    return out.replace("+ -", "- ")


def render_char(ch: CharElement, fmt: str, finite: bool = False) -> str:
    if fmt == "json":
        return json.dumps(ch.to_json_obj())
    items = sorted(ch.items(), reverse=True)
    if fmt == "latex":
        if finite:
            return _latex_sum([_latex_mono(k[:-2], v) for k, v in items])
        return _latex_sum([("" if v == 1 else str(v)) + "e^{" + format_weight(k) + "}"
                           for k, v in items])
    lines = []
    for k, v in items:
        mono = "e^" + (_fin(k[:-2]) if finite else format_weight(k))
        if finite and not any(k[:-2]):
            mono = "e^0"
        lines.append(mono if v == 1 else f"{v}*{mono}")
    lines.append(f"dim {ch.dim()}")
    return "\n".join(lines)


def render_graded(d: dz.DemazureCharacter, fmt: str) -> str:
    graded = d.graded()
    if fmt == "json":
        return json.dumps([{"weight": list(fin), "grade": g, "coeff": v}
                           for (fin, g), v in sorted(graded.items())], default=str)
    by_grade: dict = {}
    for (fin, g), v in graded.items():
        by_grade.setdefault(g, []).append((fin, v))
    if fmt == "latex":
        terms = [_latex_mono(fin, v, g) for g in sorted(by_grade)
                 for fin, v in sorted(by_grade[g], reverse=True)]
        return _latex_sum(terms)
    lines = [f"q^{g}: dim {sum(v for _, v in by_grade[g])}" for g in sorted(by_grade)]
    lines.append(f"total dim {d.dim()}")
    return "\n".join(lines)


# -- argument helpers ------------------------------------------------------------

def _root_system(text: str):
    try:
        return build_root_system(text)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None


def _weight(rs, text: str):
    try:
        return parse_weight(text, rs.rank)
    except RootSystemError as exc:
        raise UsageError(f"--weight: {exc}") from None


def parse_factor(rs, text: str):
    """Parse ``ELEMENT/FIN/LEVEL`` into ``(AffWeylElement, AffWeight)``.

    ``ELEMENT`` is ``id``, ``w0``, ``t:MU`` (the translation ``t_{w0 MU}``,
    ``MU`` in ``M+``), ``w:I,J,...`` (finite simple reflections, 1-based) or
    ``a:I,J,...`` (affine simple reflections, 0 is the affine node).
    """
    parts = text.split("/")
    if len(parts) != 3:
        raise UsageError(f"factor {text!r}: expected ELEMENT/FIN/LEVEL")
    el, fin, lev = parts
    try:
        level = int(lev)
    except ValueError:
        raise UsageError(f"factor {text!r}: bad level {lev!r}") from None
    lam = AffWeight(_weight(rs, fin), level, 0)
    try:
        if el == "id":
            x = AffWeylElement.identity(rs)
        elif el == "w0":
            x = AffWeylElement.w0(rs)
        elif el.startswith("t:"):
            x = w0_translation(rs, _weight(rs, el[2:]))
        elif el.startswith(("w:", "a:")):
            letters = [int(c) for c in el[2:].split(",") if c.strip()]
            if el[0] == "w":
                x = AffWeylElement.finite(rs, [i - 1 for i in letters])
            else:
                x = AffWeylElement.from_word(rs, letters)
        else:
            raise UsageError(f"factor {text!r}: unknown element {el!r}")
    except (ValueError, RootSystemError, LatticeError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"factor {text!r}: {exc}") from None
    return x, lam


def _setup_cache(args) -> None:
    if getattr(args, "no_cache", False):
        dz.set_disk_cache(None)
    else:
        dz.set_disk_cache(Path(args.cache_dir) if args.cache_dir else default_cache_dir())


# -- commands ------------------------------------------------------------------

def cmd_char(args, out) -> int:
    rs = _root_system(args.type)
    lam = _weight(rs, args.weight)
    ch = dz.finite_character(rs, lam)
    print(render_char(ch, args.format, finite=True), file=out)
    return EXIT_OK


def cmd_demazure(args, out) -> int:
    rs = _root_system(args.type)
    lam = _weight(rs, args.weight)
    _setup_cache(args)
    d = dz.demazure_character(rs, args.level, lam)
    text = render_graded(d, args.format) if args.graded else render_char(d.char, args.format)
    print(text, file=out)
    return EXIT_OK


def cmd_gen_demazure(args, out) -> int:
    rs = _root_system(args.type)
    factors = [parse_factor(rs, f) for f in args.factor]
    d = dz.generalized_demazure_character(rs, factors)
    if args.graded:
        print(render_graded(d, args.format), file=out)
    else:
        print(render_char(d.char, args.format), file=out)
    return EXIT_OK


def _load_grid(args) -> GridConfig:
    data: dict = {}
    if args.grid:
        try:
            data = json.loads(Path(args.grid).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"--grid: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("--grid: expected a JSON object")
    for item in args.set or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--set {item!r}: expected KEY=VALUE")
        try:
            data[key] = json.loads(value)
        except ValueError:
            data[key] = value
    try:
        return GridConfig.from_mapping(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"grid: {exc}") from None


def cmd_verify(args, out) -> int:
    if args.all:
        suites = list(SUITES)
    elif args.suite:
        suites = args.suite
    else:
        raise UsageError("verify needs --suite NAME or --all")
    for name in suites:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    grid = _load_grid(args)
    types = args.type or None
    if types:
        for t in types:
            _root_system(t)
    per_suite = {name: run_suite(name, grid, types, fault=args.self_test, seed=args.seed,
                                 sample=args.sample) for name in suites}
    reports = [r for name in suites for r in per_suite[name]]
    if args.format == "json":
        for rep in reports:
            print(rep.to_json(timing=args.timing), file=out)
    summary = sys.stderr if args.format == "json" else out
    print(f"{'suite':<10} {'cases':>6} {'passed':>7} {'failed':>7}", file=summary)
    for name in suites:
        mine = per_suite[name]
        ok = sum(r.passed for r in mine)
        print(f"{name:<10} {len(mine):>6} {ok:>7} {len(mine) - ok:>7}", file=summary)
    failed = [r for r in reports if not r.passed]
    if args.format != "json":
        for r in failed:
            print(f"FAIL {r.case_id}: {r.witness}", file=out)
    if args.self_test:
        print(f"self-test: injected fault detected in {len(failed)} of {len(reports)} cases",
              file=summary)
    return EXIT_FAIL if failed else EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affdemazure",
                                description="Characters of Demazure modules for current algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True):
        if fmt:
            sp.add_argument("--format", choices=("text", "json", "latex"), default="text")

    sp = sub.add_parser("char", help="character of the irreducible module V(lambda)")
    sp.add_argument("--type", required=True)
    sp.add_argument("--weight", required=True, help="comma-separated omega-coordinates")
    common(sp)
    sp.set_defaults(func=cmd_char)

    sp = sub.add_parser("demazure", help="character of D(level, lambda)")
    sp.add_argument("--type", required=True)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--weight", required=True)
    sp.add_argument("--graded", action="store_true", help="q-graded h-character")
    sp.add_argument("--cache-dir")
    sp.add_argument("--no-cache", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_demazure)

    sp = sub.add_parser("gen-demazure", help="character of a generalized Demazure module")
    sp.add_argument("--type", required=True)
    sp.add_argument("--factor", action="append", required=True,
                    help="ELEMENT/FIN/LEVEL with ELEMENT one of id, w0, t:MU, w:I,J, a:I,J")
    sp.add_argument("--graded", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_gen_demazure)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)}")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--type", action="append", help="restrict every suite to these types")
    sp.add_argument("--grid", help="JSON file with grid parameters")
    sp.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a grid parameter")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--sample", type=int, help="run a seeded random subset of each suite")
    sp.add_argument("--self-test", action="store_true",
                    help="inject a single-coefficient fault into every case")
    sp.add_argument("--timing", action="store_true", help="include timings in JSON reports")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, dz.DomainError, dz.PreconditionError, UnsupportedInputError,
            LatticeError, RootSystemError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())


def main_entry() -> None:
    sys.exit(main())
