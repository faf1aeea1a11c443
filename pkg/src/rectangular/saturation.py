"""Leveled saturation checks and a back-and-forth engine for finite structures."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .errors import Budget, ClassMismatch, MalformedInput, NoRealizer, UnknownPoint
from .forcing import one_point_types, realizes
from .structures import FinStructure, PartialMap, canonical, induced

TYPE_MODES = ("class", "realized")


@dataclass(frozen=True)
class SaturationReport:
    level: int
    saturating: bool
    counterexample: tuple | None = None   # (E, type) with type a tuple of (e, c(e, new))
    checked: int = 0

    @property
    def verdict(self) -> str:
        return "saturating" if self.saturating else "counterexample"

    def replay(self, x: FinStructure, d_set: Iterable) -> bool:
        """True iff the counterexample really has no realizer in D minus E."""
        if self.counterexample is None:
            return False
        e, type_ = self.counterexample
        return not any(realizes(x, d, type_) for d in set(d_set) - set(e))


def _realized_types(x: FinStructure, e: tuple) -> list[tuple]:
    seen = {}
    for d in x.points:
        if d in e:
            continue
        t = tuple((p, x.color(p, d)) for p in e)
        seen.setdefault(t, None)
    return list(seen)


def is_saturating(x: FinStructure, d_set: Iterable, m: int, types: str = "class",
                  only: Iterable[tuple] | None = None) -> SaturationReport:
    """Check that every one-point type over every E with ``|E| <= m`` has a
    realizer in ``D \\ E``.

    ``types="class"`` asks for every type the class allows over E;
    ``types="realized"`` only for the types some point of x outside E already
    realizes.  ``only`` replaces both by an explicit list of types (bases of
    size above m are skipped).
    """
    if m < 0:
        raise MalformedInput("level must be nonnegative")
    if types not in TYPE_MODES:
        raise MalformedInput(f"types must be one of {TYPE_MODES}")
    d = set(d_set)
    for p in d:
        if p not in x:
            raise UnknownPoint(f"{p} not in structure")
    budget = Budget("is_saturating")
    checked = 0

    def witnessed(e, t) -> bool:
        return any(realizes(x, q, t) for q in d if q not in e)

    if only is not None:
        for t in only:
            t = tuple(t)
            e = canonical(p for p, _ in t)
            if len(e) > m:
                continue
            budget.tick()
            checked += 1
            if not witnessed(e, t):
                return SaturationReport(m, False, (e, t), checked)
        return SaturationReport(m, True, None, checked)
    for k in range(0, m + 1):
        for e in combinations(x.points, k):
            base = induced(x, e)
            candidates = one_point_types(base) if types == "class" else _realized_types(x, e)
            for t in candidates:
                budget.tick()
                checked += 1
                if not witnessed(e, t):
                    return SaturationReport(m, False, (e, t), checked)
    return SaturationReport(m, True, None, checked)


def _as_map(p) -> PartialMap:
    return p if isinstance(p, PartialMap) else PartialMap.from_dict(p)


def _candidates(src: FinStructure, dst: FinStructure, p: PartialMap, target,
                src_blocks: Mapping | None, dst_blocks: Mapping | None):
    """Points of dst that can be matched with target while keeping p color-preserving."""
    used = set(p.image)
    for b in dst.points:
        if b in used:
            continue
        if src_blocks is not None and dst_blocks is not None and src_blocks.get(target) != dst_blocks.get(b):
            continue
        if all(src.color(a, target) == dst.color(fa, b) and src.color(target, a) == dst.color(b, fa)
               for a, fa in p):
            yield b


def extend_partial_iso(x: FinStructure, y: FinStructure, p, target, side: str = "forward",
                       x_blocks: Mapping | None = None, y_blocks: Mapping | None = None) -> PartialMap:
    """Add one pair to p covering ``target`` (in x going forward, in y going back).

    The first realizer in canonical order is taken.  When block labelings are
    given, matched points must carry equal labels.
    """
    if x.cls != y.cls:
        raise ClassMismatch("structures of different classes")
    p = _as_map(p)
    p.check_points(x, y)
    if side == "forward":
        src, dst, q, sb, db = x, y, p, x_blocks, y_blocks
    elif side == "backward":
        src, dst, q, sb, db = y, x, p.inverse(), y_blocks, x_blocks
    else:
        raise MalformedInput("side must be forward or backward")
    if target not in src:
        raise UnknownPoint(f"{target} not in structure")
    if target in set(q.domain):
        raise MalformedInput(f"{target} is already covered")
    for b in _candidates(src, dst, q, target, sb, db):
        return p.extended(target, b) if side == "forward" else p.extended(b, target)
    raise NoRealizer(f"no point realizes the type of {target} over the current map")


@dataclass
class BackAndForthResult:
    ok: bool
    mapping: PartialMap | None
    trace: list = field(default_factory=list)   # (side, target, chosen point or None)

    def __bool__(self) -> bool:
        return self.ok


def back_and_forth(x: FinStructure, y: FinStructure, start=None) -> BackAndForthResult:
    """Extend ``start`` to an isomorphism x -> y, alternating sides, with backtracking."""
    start = _as_map(start or {})
    trace: list = []
    if x.cls != y.cls:
        raise ClassMismatch("structures of different classes")
    start.check_points(x, y)
    if len(x) != len(y):
        trace.append(("size", len(x), len(y)))
        return BackAndForthResult(False, None, trace)
    if not start.preserves(x, y):
        trace.append(("start", None, None))
        return BackAndForthResult(False, None, trace)
    budget = Budget("back_and_forth")

    def rec(p: PartialMap, forward: bool):
        budget.tick()
        dom, img = set(p.domain), set(p.image)
        if len(dom) == len(x):
            return p
        left_x = [a for a in x.points if a not in dom]
        left_y = [b for b in y.points if b not in img]
        if not forward and not left_y or forward and not left_x:
            forward = not forward
        if forward:
            target = left_x[0]
            options = [(target, b) for b in _candidates(x, y, p, target, None, None)]
        else:
            target = left_y[0]
            options = [(a, target) for a in _candidates(y, x, p.inverse(), target, None, None)]
        side = "forward" if forward else "backward"
        if not options:
            trace.append((side, target, None))
        for a, b in options:
            trace.append((side, target, b if forward else a))
            got = rec(p.extended(a, b), not forward)
            if got is not None:
                return got
        return None

    got = rec(start, True)
    if got is None:
        return BackAndForthResult(False, None, trace)
    assert got.is_total_bijection(x, y) and got.preserves(x, y)
    return BackAndForthResult(True, got, trace)
