"""Command-line interface.  Exit codes: 0 success, 1 searched and absent, 2 bad input."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .alike import TupleFamily, is_alike
from .amalgamation import AmalgamDiagram, disjoint_amalgam, rect_amalgam, remainder_alike
from .classes import ClassSpec
from .delta import extract_delta_system
from .errors import NoAmalgamExists, NoRealizer, RectangularError
from .extraction import (check_decomposition, chromatic_partition, clique_or_anticlique,
                         homomorphic_restriction, max_alike_subfamily, monochromatic_partition,
                         preserves_pair, rectangle_partition, transitive_partition)
from .fileformat import (format_label, format_points, format_structure, parse_class, parse_label,
                         parse_map, parse_sets, parse_structure, parse_tuples)
from .forcing import build_generic
from .properties import PROPERTIES, check_property
from .saturation import TYPE_MODES, back_and_forth, is_saturating
from .structures import canonical, induced, is_valid, validate

OK, ABSENT, BAD_INPUT = 0, 1, 2


class UsageError(RectangularError):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None


def _structure(path: str, check: bool = True):
    try:
        return parse_structure(_read(path), check=check)
    except RectangularError as e:
        raise UsageError(f"{path}: {e}") from None


def _labels(text: str) -> tuple:
    return tuple(parse_label(t) for t in text.replace(",", " ").split())


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _class_from_args(args) -> ClassSpec:
    tokens = [args.cls] + ([f"K={args.K}"] if args.K else [])
    return parse_class(tokens)


# subcommands --------------------------------------------------------------

def cmd_validate(args) -> int:
    s = _structure(args.file, check=False)
    rep = validate(s)
    if rep.ok:
        print("ok")
        return OK
    print(f"invalid: {rep.axiom} at {format_points(rep.witness)}")
    return ABSENT


def cmd_amalgamate(args) -> int:
    files = [_structure(f) for f in args.files]
    if args.rect:
        if len(files) != 3 or args.map is None:
            raise UsageError("--rect needs R X Y files and --map")
        root, x, y = files
        d = AmalgamDiagram(root, x, y, parse_map(args.map))
        try:
            z = rect_amalgam(d)
        except NoAmalgamExists as e:
            print(f"none: {e}")
            return ABSENT
        if not (is_valid(z) and remainder_alike(z, d)):
            raise AssertionError("rectangular amalgam failed re-verification")
    else:
        if len(files) != 2:
            raise UsageError("amalgamate needs X Y (or --rect R X Y)")
        x, y = files
        common = x.point_set & y.point_set
        if induced(x, common) != induced(y, common):
            print("none: X and Y disagree on their common points")
            return ABSENT
        try:
            z = disjoint_amalgam(x, y)
        except NoAmalgamExists as e:
            print(f"none: {e}")
            return ABSENT
        if not (is_valid(z) and induced(z, x.points) == x and induced(z, y.points) == y):
            raise AssertionError("amalgam failed re-verification")
    _emit(args, format_structure(z))
    return OK


def cmd_limit(args) -> int:
    cls = _class_from_args(args)
    if args.n < 0 or args.depth < 0:
        raise UsageError("-n and --depth must be nonnegative")
    s = build_generic(cls, args.n, args.depth, args.seed)
    if not is_valid(s):
        raise AssertionError("generic structure failed re-verification")
    _emit(args, format_structure(s))
    return OK


def cmd_alike(args) -> int:
    s = _structure(args.file)
    v = is_alike(s, _labels(args.x), _labels(args.y))
    if v.alike:
        print("alike")
        return OK
    print(f"not alike: {v.violated_axiom} at indices {v.witness[0]},{v.witness[1]}")
    return ABSENT


def cmd_extract(args) -> int:
    s = _structure(args.file)
    if args.what == "clique":
        got = clique_or_anticlique(s, args.k)
        if got is None:
            print("none")
            return ABSENT
        pts, tag = got
        want = "edge" if tag == "clique" else "non"
        if not all(s.color(a, b) == want for a in pts for b in pts if a != b):
            raise AssertionError("clique failed re-verification")
        print(f"{tag} {format_points(pts)}")
        return OK
    if args.what == "alike-family":
        if not args.tuples:
            raise UsageError("alike-family needs --tuples FILE")
        fam = TupleFamily(s, parse_tuples(_read(args.tuples)))
        idx = max_alike_subfamily(fam)
        print("indices " + " ".join(str(i) for i in idx))
        return OK
    if not args.map:
        raise UsageError("subfunction needs --map")
    f = parse_map(args.map)
    e = homomorphic_restriction(s, f)
    if not all(preserves_pair(s, s, f, a, b) for a in e for b in e if a != b):
        raise AssertionError("subfunction failed re-verification")
    print("domain " + format_points(e))
    return OK


def cmd_decompose(args) -> int:
    s = _structure(args.file)
    if args.kind == "rectangles":
        dec = rectangle_partition(s)
    elif args.kind == "mono":
        if args.color is None:
            raise UsageError("mono needs --color")
        dec = monochromatic_partition(s, s.cls.parse_color(args.color))
    elif args.kind == "chromatic":
        dec = chromatic_partition(s)
    else:
        dec = transitive_partition(s)
    problems = check_decomposition(s, dec)
    if problems:
        raise AssertionError("decomposition failed re-verification: " + problems[0])
    print(f"{dec.kind} {len(dec)}")
    for part in dec.parts:
        if dec.kind == "rectangles":
            I, J, col = part
            print(f"rect {format_points(I)} | {format_points(J)} : {s.cls.format_color(col)}")
        else:
            print(f"part {format_points(part)}")
    return OK


def cmd_dsystem(args) -> int:
    sets = parse_sets(_read(args.file))
    ds = extract_delta_system(sets, args.r)
    if ds is None:
        print("none")
        return ABSENT
    if not ds.verify(sets):
        raise AssertionError("Δ-system failed re-verification")
    print("root " + format_points(canonical(ds.root)))
    print("members " + " ".join(str(i) for i in ds.member_indices))
    return OK


def cmd_saturate(args) -> int:
    s = _structure(args.file)
    d = _labels(args.set) if args.set is not None else s.points
    rep = is_saturating(s, d, args.m, types=args.types)
    if rep.saturating:
        print(f"saturating at level {args.m}")
        return OK
    e, t = rep.counterexample
    desc = " ".join(f"{format_label(p)}:{s.cls.format_color(c)}" for p, c in t)
    print(f"counterexample E={{{format_points(e)}}} type={{{desc}}}")
    return ABSENT


def cmd_bnf(args) -> int:
    x, y = _structure(args.x), _structure(args.y)
    res = back_and_forth(x, y, parse_map(args.start) if args.start else None)
    if not res.ok:
        print(f"failure after {len(res.trace)} steps")
        return ABSENT
    print("iso " + ", ".join(f"{format_label(a)}={format_label(b)}" for a, b in res.mapping))
    return OK


def cmd_property(args) -> int:
    cls = _class_from_args(args)
    rep = check_property(cls, args.prop, args.bound)
    print(f"{rep.property} {cls} bound {rep.bound}: {rep.verdict} ({rep.diagrams_checked} diagrams)")
    if rep.holds:
        return OK
    R, X, Y, _ = rep.counterexample
    for name, s in (("R", R), ("X", X), ("Y", Y)):
        print(f"# {name}")
        sys.stdout.write(format_structure(s))
    return ABSENT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rectangular", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a structure file against its class")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("amalgamate", help="disjoint amalgam of X and Y, or rectangular amalgam with --rect")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--rect", action="store_true")
    p.add_argument("--map", help="isomorphism X -> Y as x1=y1,x2=y2,...")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_amalgamate)

    def class_args(q):
        q.add_argument("--class", dest="cls", required=True)
        q.add_argument("--K", help="distance set for metric classes, e.g. 1,2,3")

    p = sub.add_parser("limit", help="grow a generic structure by a seeded dense-set schedule")
    class_args(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_limit)

    p = sub.add_parser("alike", help="decide whether two tuples are alike")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(run=cmd_alike)

    p = sub.add_parser("extract", help="clique/anticlique, alike subfamily, or color-preserving subfunction")
    p.add_argument("what", choices=("clique", "alike-family", "subfunction"))
    p.add_argument("file")
    p.add_argument("-k", type=int, default=3)
    p.add_argument("--tuples")
    p.add_argument("--map")
    p.set_defaults(run=cmd_extract)

    p = sub.add_parser("decompose", help="partition a coloring into verified pieces")
    p.add_argument("kind", choices=("rectangles", "mono", "chromatic", "transitive"))
    p.add_argument("file")
    p.add_argument("--color")
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("dsystem", help="find a Δ-system in a sets file")
    p.add_argument("file")
    p.add_argument("-r", type=int, default=3)
    p.set_defaults(run=cmd_dsystem)

    p = sub.add_parser("saturate", help="leveled saturation check")
    p.add_argument("file")
    p.add_argument("--set", help="candidate subset D (default: all points)")
    p.add_argument("-m", type=int, default=1)
    p.add_argument("--types", choices=TYPE_MODES, default="class")
    p.set_defaults(run=cmd_saturate)

    p = sub.add_parser("bnf", help="back-and-forth isomorphism search")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--start")
    p.set_defaults(run=cmd_bnf)

    p = sub.add_parser("property", help="bounded check of AP, SP, SAP or RSP for a class")
    class_args(p)
    p.add_argument("--prop", choices=PROPERTIES, required=True)
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(run=cmd_property)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    try:
        return args.run(args)
    except NoRealizer as e:
        print(f"none: {e}")
        return ABSENT
    except RectangularError as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
