"""Amalgams over a common substructure.

Two families of constructions live here:

* disjoint (strong) amalgams of an arbitrary cospan ``R ⊆ X``, ``R ⊆ Y`` with
  ``X ∩ Y = R``, filled by a per-class canonical rule with an exhaustive
  fallback;
* rectangular amalgams of an isomorphic pair ``h: X -> Y`` fixing ``R``, built
  so that every enumeration of ``X \\ R`` is alike with its image under ``h``.

Rectangular amalgams share one shape.  Off the matched pairs, a cross pair
``(x_i, h(x_j))`` copies the color of ``(x_i, x_j)``; the matched pairs
``(x_i, h(x_i))`` all receive one "diagonal" color.  The alike axioms force
exactly this shape, so the classes differ only in which diagonal color keeps
the result inside the class.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterator

from .alike import alike
from .classes import Color
from .errors import Budget, ClassMismatch, InvalidDiagram, NoAmalgamExists
from .structures import FinStructure, PartialMap, canonical, induced, is_valid, label_key, validate


def fresh_labels(taken, count: int) -> list:
    """``count`` labels not in ``taken``: integers past the largest int label,
    or primed strings when ``taken`` holds no integers."""
    taken = set(taken)
    ints = [p for p in taken if isinstance(p, int) and not isinstance(p, bool)]
    out = []
    if ints or not taken:
        nxt = max(ints, default=-1) + 1
        while len(out) < count:
            if nxt not in taken:
                out.append(nxt)
            nxt += 1
        return out
    for p in canonical(taken):
        if len(out) == count:
            break
        q = f"{p}'"
        while q in taken:
            q += "'"
        out.append(q)
        taken.add(q)
    k = 0
    while len(out) < count:
        q = f"_{k}"
        if q not in taken:
            out.append(q)
            taken.add(q)
        k += 1
    return out


@dataclass(frozen=True)
class AmalgamDiagram:
    """Isomorphic extensions ``R ⊆ X``, ``R ⊆ Y`` with ``h: X -> Y`` fixing R."""

    root: FinStructure
    left: FinStructure
    right: FinStructure
    h: PartialMap

    def __post_init__(self):
        R, X, Y, h = self.root, self.left, self.right, self.h
        if not (R.cls == X.cls == Y.cls):
            raise ClassMismatch("diagram mixes classes")
        if X.point_set & Y.point_set != R.point_set:
            raise InvalidDiagram("X ∩ Y must equal R")
        if induced(X, R.points) != R or induced(Y, R.points) != R:
            raise InvalidDiagram("R must be a substructure of both X and Y")
        if set(h.domain) != X.point_set or set(h.image) != Y.point_set:
            raise InvalidDiagram("h must be a bijection X -> Y")
        if any(h(r) != r for r in R.points):
            raise InvalidDiagram("h must fix R pointwise")
        if not h.preserves(X, Y):
            raise InvalidDiagram("h must preserve colors")

    @classmethod
    def copy_of(cls, x: FinStructure, root_points, labels=None) -> AmalgamDiagram:
        """Diagram whose right side is a relabeled copy of ``x`` over ``root_points``."""
        root = induced(x, root_points)
        rem = [p for p in x.points if p not in root.point_set]
        new = list(labels) if labels is not None else fresh_labels(x.point_set, len(rem))
        if len(new) != len(rem):
            raise InvalidDiagram("need one fresh label per remainder point")
        mapping = dict(zip(rem, new))
        y = x.relabel(mapping)
        h = PartialMap.from_dict({p: mapping.get(p, p) for p in x.points})
        return cls(root, x, y, h)

    @property
    def remainder(self) -> tuple:
        return tuple(p for p in self.left.points if p not in self.root.point_set)

    @property
    def cls(self):
        return self.left.cls


def _union_coloring(x: FinStructure, y: FinStructure) -> dict:
    c = x.coloring()
    c.update(y.coloring())
    return c


def _cospan(x: FinStructure, y: FinStructure) -> FinStructure:
    if x.cls != y.cls:
        raise ClassMismatch(f"{x.cls} vs {y.cls}")
    common = x.point_set & y.point_set
    r = induced(x, common)
    if induced(y, common) != r:
        raise InvalidDiagram("X and Y disagree on their common points")
    return r


def _metric_interval(x: FinStructure, y: FinStructure, root, a, b) -> tuple:
    lo, hi = Fraction(0), None
    for r in root:
        da, db = x.color(a, r), y.color(b, r)
        lo = max(lo, abs(da - db))
        hi = da + db if hi is None else min(hi, da + db)
    return lo, hi


def canonical_cross_color(x: FinStructure, y: FinStructure, root: FinStructure, a, b) -> Color:
    """Canonical color of ``(a, b)`` for ``a ∈ X \\ R``, ``b ∈ Y \\ R``."""
    cls = x.cls
    kind = cls.kind
    if kind in ("graph", "matching"):
        return "non"
    if kind == "digraph":
        return "none"
    if kind == "tournament":
        return "to"
    if kind == "linear_order":
        ga = sum(1 for r in root.points if x.color(r, a) == "lt")
        gb = sum(1 for r in root.points if y.color(r, b) == "lt")
        return "lt" if ga <= gb else "gt"
    if kind == "partial_order":
        if any(x.color(a, r) == "lt" and y.color(r, b) == "lt" for r in root.points):
            return "lt"
        if any(y.color(b, r) == "lt" and x.color(r, a) == "lt" for r in root.points):
            return "gt"
        return "inc"
    lo, hi = _metric_interval(x, y, root.points, a, b)
    feasible = [k for k in cls.color_set if k >= lo and (hi is None or k <= hi)]
    if not feasible:
        raise NoAmalgamExists(f"no distance in K fits [{lo}, {hi}] for ({a}, {b})")
    return feasible[-1]


def iter_amalgams(x: FinStructure, y: FinStructure, budget: Budget | None = None) -> Iterator[FinStructure]:
    """Every valid structure on ``X ∪ Y`` extending both sides, in canonical order.

    Cross colors are chosen one right-hand point at a time; each partial
    amalgam is validated before going deeper.
    """
    root = _cospan(x, y)
    cls = x.cls
    left = [p for p in x.points if p not in root.point_set]
    right = [p for p in y.points if p not in root.point_set]
    base = _union_coloring(x, y)
    budget = budget or Budget("amalgam search")
    placed = list(x.points)

    def rec(k: int, colors: dict) -> Iterator[FinStructure]:
        if k == len(right):
            yield FinStructure(cls, placed, colors, check=False)
            return
        b = right[k]
        for combo in product(cls.color_set, repeat=len(left)):
            budget.tick()
            c = dict(colors)
            for a, col in zip(left, combo):
                c[(a, b)] = col
                c[(b, a)] = cls.reverse(col)
            pts = placed + [b]
            cand = FinStructure(cls, pts, {k2: v for k2, v in c.items() if k2[0] in pts and k2[1] in pts},
                                check=False)
            if is_valid(cand, focus=[b]):
                placed.append(b)
                yield from rec(k + 1, c)
                placed.pop()

    # restrict the base to X plus the right-hand points placed so far
    yield from rec(0, base)


def disjoint_amalgam(x, y: FinStructure | None = None) -> FinStructure:
    """Strong amalgam of ``x`` and ``y`` over their literal intersection.

    Accepts either two structures or an :class:`AmalgamDiagram`.  Cross
    colors follow the class's canonical rule; if that result is invalid, the
    first valid fill in canonical search order is returned instead.
    """
    if isinstance(x, AmalgamDiagram):
        x, y = x.left, x.right
    root = _cospan(x, y)
    left = [p for p in x.points if p not in root.point_set]
    right = [p for p in y.points if p not in root.point_set]
    c = _union_coloring(x, y)
    cls = x.cls
    try:
        for a in left:
            for b in right:
                col = canonical_cross_color(x, y, root, a, b)
                c[(a, b)] = col
                c[(b, a)] = cls.reverse(col)
        z = FinStructure(cls, x.point_set | y.point_set, c, check=False)
        if is_valid(z):
            return z
    except NoAmalgamExists:
        if cls.kind == "metric":
            raise
    for z in iter_amalgams(x, y):
        return z
    raise NoAmalgamExists(f"no {cls} structure contains both sides")


def pullback_amalgam(d: AmalgamDiagram, diagonal: Color) -> FinStructure:
    """The forced rectangular shape with the given diagonal color (unvalidated)."""
    X, Y, h = d.left, d.right, d.h
    cls = d.cls
    c = _union_coloring(X, Y)
    rem = d.remainder
    for a in rem:
        for b in rem:
            col = diagonal if a == b else X.color(a, b)
            c[(a, h(b))] = col
            c[(h(b), a)] = cls.reverse(col)
    return FinStructure(cls, X.point_set | Y.point_set, c, check=False)


def _checked(z: FinStructure, what: str) -> FinStructure:
    rep = validate(z)
    if not rep.ok:
        raise NoAmalgamExists(f"{what}: result violates {rep.axiom} at {rep.witness}")
    return z


def diagonal_distance(d: AmalgamDiagram) -> Fraction:
    """Distance put on matched pairs: least distance inside X, or min K if X has no pair."""
    X = d.left
    dists = [X.color(a, b) for a, b in X.ordered_pairs()]
    return min(dists) if dists else X.cls.color_set[0]


def rect_amalgam_metric(d: AmalgamDiagram) -> FinStructure:
    """Metric amalgam with ``d*(x, h(x)) = s`` and ``d*(x, h(x')) = d_X(x, x')``."""
    if d.cls.kind != "metric":
        raise InvalidDiagram("rect_amalgam_metric needs a metric diagram")
    return _checked(pullback_amalgam(d, diagonal_distance(d)), "metric amalgam")


def rect_amalgam_order(d: AmalgamDiagram, kind: str | None = None, one_sided: bool = False) -> FinStructure:
    """Rectangular amalgam of linear or partial orders.

    Linear: ``x_i < h(x_i)`` and ``x_i < h(x_j) ⟺ x_i < x_j``.  Partial:
    ``x_i`` incomparable with ``h(x_i)``, all other cross pairs copied from X.
    ``one_sided=True`` builds the variant where additionally no ``h(x_i)``
    lies below any ``x_j``; it is a valid partial order but fails A3a
    whenever X ∖ R has a comparable pair.
    """
    kind = kind or {"linear_order": "linear", "partial_order": "partial"}.get(d.cls.kind)
    expected = {"linear": "linear_order", "partial": "partial_order"}.get(kind)
    if expected is None or d.cls.kind != expected:
        raise InvalidDiagram(f"order amalgam of kind {kind!r} does not fit class {d.cls}")
    if kind == "linear":
        return _checked(pullback_amalgam(d, "lt"), "linear amalgam")
    if not one_sided:
        return _checked(pullback_amalgam(d, "inc"), "partial amalgam")
    X, Y, h = d.left, d.right, d.h
    c = _union_coloring(X, Y)
    for a in d.remainder:
        for b in d.remainder:
            col = "lt" if a != b and X.color(a, b) == "lt" else "inc"
            c[(a, h(b))] = col
            c[(h(b), a)] = "gt" if col == "lt" else "inc"
    return _checked(FinStructure(d.cls, X.point_set | Y.point_set, c, check=False), "partial amalgam")


_EDGE_DIAGONAL = {"graph": "non", "digraph": "none", "tournament": "to"}


def rect_amalgam_edge(d: AmalgamDiagram, kind: str | None = None) -> FinStructure:
    """Rectangular amalgam for graphs, digraphs (matched pairs unjoined) and
    tournaments (every ``x_i -> h(x_i)``)."""
    kind = kind or d.cls.kind
    if kind not in _EDGE_DIAGONAL or d.cls.kind != kind:
        raise InvalidDiagram(f"edge amalgam of kind {kind!r} does not fit class {d.cls}")
    return _checked(pullback_amalgam(d, _EDGE_DIAGONAL[kind]), f"{kind} amalgam")


def rect_amalgam(d: AmalgamDiagram) -> FinStructure:
    """Dispatch to the class's rectangular construction."""
    kind = d.cls.kind
    if kind == "metric":
        return rect_amalgam_metric(d)
    if kind in ("linear_order", "partial_order"):
        return rect_amalgam_order(d)
    if kind in _EDGE_DIAGONAL:
        return rect_amalgam_edge(d)
    for col in d.cls.color_set:
        z = pullback_amalgam(d, col)
        if is_valid(z):
            return z
    raise NoAmalgamExists(f"{d.cls} has no rectangular amalgam for this diagram")


def remainder_alike(z: FinStructure, d: AmalgamDiagram, all_enumerations: bool = True) -> bool:
    """Does every (or the canonical) enumeration of X ∖ R stay alike with its h-image?"""
    rem = d.remainder
    if not rem:
        return True
    orders = permutations(rem) if all_enumerations else [rem]
    return all(alike(z, e, tuple(d.h(p) for p in e)) for e in orders)


# labels for the six mixed chain shapes a < b < c, by side (X or Y) of each point
TRANSITIVITY_CASES = {
    ("X", "Y", "X"): 1,
    ("Y", "X", "X"): 2,
    ("X", "X", "Y"): 3,
    ("Y", "Y", "X"): 4,
    ("X", "Y", "Y"): 5,
    ("Y", "X", "Y"): 6,
}


def order_transitivity_cases(z: FinStructure, d: AmalgamDiagram) -> Counter:
    """Count chains ``a < b < c`` over remainder points by side pattern.

    Keys 1..6 are the mixed patterns; key 0 counts chains where ``a < c``
    fails (a transitivity failure), which must stay absent.
    """
    side = {p: "X" for p in d.remainder}
    side.update({d.h(p): "Y" for p in d.remainder})
    pts = sorted(side, key=label_key)
    seen: Counter = Counter()
    for a in pts:
        for b in pts:
            if b == a or z.color(a, b) != "lt":
                continue
            for c in pts:
                if c in (a, b) or z.color(b, c) != "lt":
                    continue
                case = TRANSITIVITY_CASES.get((side[a], side[b], side[c]))
                if z.color(a, c) != "lt":
                    seen[0] += 1
                elif case is not None:
                    seen[case] += 1
    return seen
