"""Extraction searches: alike subfamilies, color-preserving subfunctions,
clique-or-anticlique, and partitions of colorings into nice pieces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .alike import TupleFamily, alike
from .classes import ClassSpec
from .errors import Budget, ClassMismatch, MalformedInput, NotInjective, UnknownPoint
from .structures import FinStructure, PartialMap, canonical, label_key

EXACT_CAP = 20


# cliques ------------------------------------------------------------------

def max_clique(vertices: Sequence, adjacent, exact_cap: int = EXACT_CAP) -> tuple:
    """A maximum clique (exact when ``len(vertices) <= exact_cap``, greedy otherwise).

    Ties go to the lexicographically first clique in vertex order.
    """
    vs = list(vertices)
    n = len(vs)
    nbr = [frozenset(j for j in range(n) if j != i and adjacent(vs[i], vs[j])) for i in range(n)]
    if n > exact_cap:
        return tuple(vs[i] for i in _greedy_clique(nbr))
    budget = Budget("max clique")
    best: list = []

    def expand(clique: list, cand: list) -> None:
        nonlocal best
        budget.tick()
        if not cand:
            if len(clique) > len(best):
                best = list(clique)
            return
        for k, v in enumerate(cand):
            if len(clique) + len(cand) - k <= len(best):
                return
            clique.append(v)
            expand(clique, [u for u in cand[k + 1:] if u in nbr[v]])
            clique.pop()

    expand([], list(range(n)))
    return tuple(vs[i] for i in best)


def _greedy_clique(nbr: list) -> list:
    order = sorted(range(len(nbr)), key=lambda i: (-len(nbr[i]), i))
    clique: list = []
    for v in order:
        if all(v in nbr[u] for u in clique):
            clique.append(v)
    return sorted(clique)


def max_alike_subfamily(family: TupleFamily, exact_cap: int = EXACT_CAP) -> tuple:
    """Indices of a largest pairwise alike subfamily."""
    ts = family.tuples
    got = max_clique(range(len(ts)), lambda i, j: alike(family.ambient, ts[i], ts[j]), exact_cap)
    assert all(alike(family.ambient, ts[i], ts[j]) for i, j in combinations(got, 2))
    return got


def preserves_pair(x: FinStructure, y: FinStructure, f: PartialMap, a, b) -> bool:
    fa, fb = f(a), f(b)
    return x.color(a, b) == y.color(fa, fb) and x.color(b, a) == y.color(fb, fa)


def homomorphic_restriction(x: FinStructure, f: PartialMap, exact_cap: int = EXACT_CAP,
                            y: FinStructure | None = None) -> tuple:
    """A largest E within the domain of f on which f preserves colors both ways."""
    y = x if y is None else y
    if not isinstance(f, PartialMap):
        f = PartialMap.from_dict(f)
    f.check_points(x, y)
    dom = f.domain
    got = max_clique(dom, lambda a, b: preserves_pair(x, y, f, a, b), exact_cap)
    return canonical(got)


def clique_or_anticlique(g: FinStructure, k: int) -> tuple[tuple, str] | None:
    """A clique (tried first) or anticlique with at least k points, greedily enlarged."""
    if g.cls.kind not in ("graph", "matching"):
        raise ClassMismatch("clique_or_anticlique needs a graph")
    pts = g.points
    for color, tag in (("edge", "clique"), ("non", "anticlique")):
        found = _mono_subset(g, pts, k, color)
        if found is not None:
            return found, tag
    return None


def _mono_subset(g: FinStructure, pts: tuple, k: int, color) -> tuple | None:
    c = g.color
    n = len(pts)

    def rec(chosen: list, start: int):
        if len(chosen) == k:
            return list(chosen)
        for i in range(start, n - (k - len(chosen)) + 1):
            p = pts[i]
            if all(c(q, p) == color for q in chosen):
                chosen.append(p)
                got = rec(chosen, i + 1)
                if got:
                    return got
                chosen.pop()
        return None

    got = rec([], 0)
    if got is None:
        return None
    for p in pts:
        if p not in got and all(c(q, p) == color for q in got):
            got.append(p)
    return canonical(got)


# decompositions -----------------------------------------------------------

KINDS = ("monochromatic", "rectangles", "chromatic", "transitive")


@dataclass(frozen=True)
class Decomposition:
    """Point-set parts, or ``(I, J, color)`` rectangles when kind is rectangles."""

    kind: str
    parts: tuple
    color: object = None   # the k of a monochromatic decomposition

    def __len__(self) -> int:
        return len(self.parts)


def _first_fit(points, fits) -> tuple:
    parts: list[list] = []
    for p in points:
        for part in parts:
            if fits(part, p):
                part.append(p)
                break
        else:
            parts.append([p])
    return tuple(tuple(part) for part in parts)


def monochromatic_partition(x: FinStructure, k) -> Decomposition:
    if k not in x.cls.color_set:
        raise MalformedInput(f"color {k!r} not in class {x.cls}")
    if not x.cls.symmetric:
        raise ClassMismatch("monochromatic partitions need a symmetric coloring")
    c = x.color
    parts = _first_fit(x.points, lambda part, p: all(c(q, p) == k for q in part))
    return Decomposition("monochromatic", parts, k)


def chromatic_partition(g: FinStructure) -> Decomposition:
    if g.cls.kind not in ("graph", "matching"):
        raise ClassMismatch("chromatic partitions need a graph")
    c = g.color
    return Decomposition("chromatic", _first_fit(g.points, lambda part, p: all(c(q, p) == "non" for q in part)))


def _transitive(t: FinStructure, pts) -> bool:
    # a tournament is transitive iff its out-degrees are pairwise distinct
    outs = [sum(1 for b in pts if b != a and t.color(a, b) == "to") for a in pts]
    return len(set(outs)) == len(outs)


def transitive_partition(t: FinStructure) -> Decomposition:
    if t.cls.kind != "tournament":
        raise ClassMismatch("transitive partitions need a tournament")
    return Decomposition("transitive", _first_fit(t.points, lambda part, p: _transitive(t, part + [p])))


def rectangle_partition(x: FinStructure) -> Decomposition:
    """Cover every ordered pair of distinct points by constant rectangles ``I x J``.

    Uncovered pairs are taken in canonical order; each seeds a rectangle that
    grows its I side first, then its J side.
    """
    c = x.color
    pts = x.points
    covered: set = set()
    rects = []
    for a in pts:
        for b in pts:
            if a == b or (a, b) in covered:
                continue
            col = c(a, b)
            I, J = [a], [b]

            def fits(p, side):
                return all((p, q) not in covered and c(p, q) == col for q in side)

            for p in pts:
                if p not in I and p not in J and fits(p, J):
                    I.append(p)
            for q in pts:
                if q not in I and q not in J and all((p, q) not in covered and c(p, q) == col for p in I):
                    J.append(q)
            covered.update((p, q) for p in I for q in J)
            rects.append((canonical(I), canonical(J), col))
    return Decomposition("rectangles", tuple(rects))


def check_decomposition(x: FinStructure, dec: Decomposition) -> list[str]:
    """Independent verifier; returns the list of violated invariants (empty if fine)."""
    problems: list[str] = []
    c = x.color
    if dec.kind == "rectangles":
        seen: dict = {}
        for n, (I, J, col) in enumerate(dec.parts):
            if set(I) & set(J):
                problems.append(f"rectangle {n}: sides meet")
            for p in I:
                for q in J:
                    if p == q:
                        continue
                    if c(p, q) != col:
                        problems.append(f"rectangle {n}: c({p},{q}) is not {col}")
                    if (p, q) in seen:
                        problems.append(f"pair ({p},{q}) in rectangles {seen[(p, q)]} and {n}")
                    seen[(p, q)] = n
        for pair in x.ordered_pairs():
            if pair not in seen:
                problems.append(f"pair {pair} uncovered")
        return problems
    if dec.kind not in KINDS:
        return [f"unknown kind {dec.kind}"]
    flat = [p for part in dec.parts for p in part]
    if sorted(flat, key=label_key) != list(x.points):
        problems.append("parts do not partition the points")
    for n, part in enumerate(dec.parts):
        if not part:
            problems.append(f"part {n} empty")
        if dec.kind == "monochromatic":
            bad = [(p, q) for p in part for q in part if p != q and c(p, q) != dec.color]
        elif dec.kind == "chromatic":
            bad = [(p, q) for p in part for q in part if p != q and c(p, q) != "non"]
        else:
            bad = [] if _is_transitive_by_triangles(x, part) else [part]
        if bad:
            problems.append(f"part {n} violates {dec.kind}: {bad[0]}")
    return problems


def _is_transitive_by_triangles(t: FinStructure, part) -> bool:
    return not any(t.color(a, b) == "to" and t.color(b, d) == "to" and t.color(d, a) == "to"
                   for a in part for b in part for d in part if len({a, b, d}) == 3)


def dominant_color(x: FinStructure, sample_subsets: Iterable[Iterable]):
    """The unique color hit by every sample subset, or None."""
    hits = None
    for sub in sample_subsets:
        s = list(sub)
        if len(s) < 2:
            raise MalformedInput("sample subsets need at least two points")
        for p in s:
            if p not in x:
                raise UnknownPoint(f"{p} not in structure")
        here = {x.color(a, b) for a in s for b in s if a != b}
        hits = here if hits is None else hits & here
    if hits is None or len(hits) != 1:
        return None
    return next(iter(hits))


# the poset of finite sets on which a partial map preserves colors ---------

def is_pf_condition(x: FinStructure, f: PartialMap, e: Iterable) -> bool:
    """True iff e lies in the domain of f and f restricted to e preserves colors."""
    e = list(e)
    dom = set(f.domain)
    if not set(e) <= dom:
        return False
    return all(preserves_pair(x, x, f, a, b) for a, b in combinations(e, 2))


def pf_union_is_condition(x: FinStructure, f: PartialMap, e1: Iterable, e2: Iterable) -> bool:
    return is_pf_condition(x, f, set(e1) | set(e2))


# scaling ------------------------------------------------------------------

def scaled(x: FinStructure, k) -> FinStructure:
    """The metric space with every distance (and the allowed set) multiplied by k."""
    if x.cls.kind != "metric":
        raise ClassMismatch("scaling needs a metric structure")
    k = Fraction(k)
    if k <= 0:
        raise MalformedInput("scale factor must be positive")
    cls = ClassSpec.metric([k * d for d in x.cls.color_set])
    return FinStructure(cls, x.points, {pq: k * d for pq, d in x.coloring().items()})


def scaling_witness(x: FinStructure, k, l) -> tuple | None:
    """A pair whose k-scaled and l-scaled distances differ, or None."""
    k, l = Fraction(k), Fraction(l)
    for a, b in combinations(x.points, 2):
        d = x.color(a, b)
        if d > 0 and k * d != l * d:
            return (a, b)
    return None
