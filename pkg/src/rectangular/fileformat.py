"""Line-based text format for structures, set families and point maps.

    class <kind> [K=<c1,c2,...>]
    points <p1> <p2> ...
    pair <x> <y> <color>

``#`` starts a comment.  Labels that look like integers are read as ints.
Pairs are mirrored through the class's reverse map.  Graphs, matchings,
digraphs and partial orders fill missing pairs with non / none / inc; metric
spaces, linear orders and tournaments must list every pair.
"""

from __future__ import annotations

import re
from typing import Iterable

from .classes import KINDS, ClassSpec
from .errors import MalformedInput
from .structures import FinStructure, PartialMap, label_key, validate

_INT = re.compile(r"-?\d+\Z")

DEFAULTS = {"graph": "non", "matching": "non", "digraph": "none", "partial_order": "inc"}


class FormatError(MalformedInput):
    def __init__(self, line: int | None, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def parse_label(token: str):
    return int(token) if _INT.match(token) else token


def format_label(label) -> str:
    text = str(label)
    if not text or any(ch.isspace() for ch in text) or text.startswith("#"):
        raise MalformedInput(f"label {label!r} cannot be written as a token")
    return text


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line.split()


def parse_class(tokens: list, line: int | None = None) -> ClassSpec:
    if not tokens or tokens[0] not in KINDS:
        raise FormatError(line, f"unknown class {' '.join(tokens)!r}; expected one of {', '.join(KINDS)}")
    kind, rest = tokens[0], tokens[1:]
    try:
        if kind == "metric":
            if len(rest) != 1 or not rest[0].startswith("K="):
                raise FormatError(line, "metric class needs K=<c1,c2,...>")
            return ClassSpec.metric(rest[0][2:].split(","))
        if rest:
            raise FormatError(line, f"unexpected tokens after class {kind}")
        return ClassSpec(kind)
    except FormatError:
        raise
    except MalformedInput as e:
        raise FormatError(line, str(e)) from None


def parse_structure(text: str, check: bool = True) -> FinStructure:
    """Parse and (unless ``check`` is False) validate a structure file."""
    cls = None
    points: list | None = None
    colors: dict = {}
    first_line: dict = {}
    for n, toks in _lines(text):
        head = toks[0]
        if head == "class":
            if cls is not None:
                raise FormatError(n, "second class line")
            cls = parse_class(toks[1:], n)
        elif head == "points":
            if cls is None:
                raise FormatError(n, "points before class")
            if points is not None:
                raise FormatError(n, "second points line")
            points = [parse_label(t) for t in toks[1:]]
            if len(set(points)) != len(points):
                raise FormatError(n, "duplicate point label")
        elif head == "pair":
            if points is None:
                raise FormatError(n, "pair before points")
            if len(toks) != 4:
                raise FormatError(n, "pair needs: pair <x> <y> <color>")
            x, y = parse_label(toks[1]), parse_label(toks[2])
            for p in (x, y):
                if p not in points:
                    raise FormatError(n, f"unknown point {p}")
            if x == y:
                raise FormatError(n, f"diagonal pair ({x}, {x})")
            try:
                col = cls.parse_color(toks[3])
            except MalformedInput as e:
                raise FormatError(n, str(e)) from None
            for key, val in (((x, y), col), ((y, x), cls.reverse(col))):
                if colors.get(key, val) != val:
                    raise FormatError(n, f"conflicts with line {first_line[key]} on pair {key}")
                colors[key] = val
                first_line.setdefault(key, n)
        else:
            raise FormatError(n, f"unknown directive {head!r}")
    if cls is None:
        raise FormatError(None, "missing class line")
    if points is None:
        raise FormatError(None, "missing points line")
    default = DEFAULTS.get(cls.kind)
    for x in points:
        for y in points:
            if x != y and (x, y) not in colors:
                if default is None:
                    a, b = sorted((x, y), key=label_key)
                    raise FormatError(None, f"missing pair ({a}, {b})")
                colors[(x, y)] = default
    s = FinStructure(cls, points, colors)
    if check:
        rep = validate(s)
        if not rep.ok:
            raise FormatError(None, f"structure violates {rep.axiom} at {rep.witness}")
    return s


def format_structure(s: FinStructure) -> str:
    """Canonical text: points in label order, one line per unordered pair."""
    cls = s.cls
    out = [cls.header(), " ".join(["points"] + [format_label(p) for p in s.points])]
    default = DEFAULTS.get(cls.kind)
    pts = s.points
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            col = s.color(a, b)
            if col == default:
                continue
            x, y = a, b
            if col in ("gt", "from"):
                x, y, col = b, a, cls.reverse(col)
            out.append(f"pair {format_label(x)} {format_label(y)} {cls.format_color(col)}")
    return "\n".join(out) + "\n"


def parse_sets(text: str) -> list[frozenset]:
    """One set per line, whitespace-separated labels; a lone ``-`` is the empty set."""
    sets = []
    for _, toks in _lines(text):
        sets.append(frozenset() if toks == ["-"] else frozenset(parse_label(t) for t in toks))
    return sets


def parse_map(text: str) -> PartialMap:
    """``x1=y1,x2=y2,...`` (whitespace around items is ignored)."""
    pairs = []
    for item in filter(None, (t.strip() for t in text.split(","))):
        if item.count("=") != 1:
            raise MalformedInput(f"map item {item!r} is not of the form x=y")
        a, b = item.split("=")
        pairs.append((parse_label(a.strip()), parse_label(b.strip())))
    return PartialMap(tuple(pairs))


def parse_tuples(text: str) -> list[tuple]:
    """One tuple per line, whitespace-separated labels."""
    return [tuple(parse_label(t) for t in toks) for _, toks in _lines(text)]


def format_points(points: Iterable) -> str:
    return " ".join(format_label(p) for p in points)
