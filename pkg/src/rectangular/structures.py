"""Finite structures as total pair-colorings, plus maps between them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Hashable, Iterable, Iterator, Mapping

from .classes import ClassSpec, Color
from .errors import ClassMismatch, MalformedInput, NotInjective, UnknownPoint

Label = Hashable


def label_key(label):
    """Canonical sort key: integers numerically, then strings, then anything else."""
    if isinstance(label, int) and not isinstance(label, bool):
        return (0, label, "")
    if isinstance(label, str):
        return (1, 0, label)
    return (2, 0, repr(label))


def canonical(points: Iterable[Label]) -> tuple:
    return tuple(sorted(points, key=label_key))


class FinStructure:
    """A finite universe with a total coloring of ordered distinct pairs.

    Instances are immutable.  The constructor only checks that the coloring is
    total and mentions no foreign points; class axioms are checked by
    :func:`validate`.
    """

    __slots__ = ("cls", "points", "_c", "_hash", "_set")

    def __init__(self, cls: ClassSpec, points: Iterable[Label], coloring: Mapping, *, check: bool = True):
        pts = canonical(points)
        if check:
            if len(set(pts)) != len(pts):
                raise MalformedInput("duplicate point labels")
            members = set(pts)
            for (x, y) in coloring:
                if x not in members or y not in members:
                    raise MalformedInput(f"coloring references unknown point in pair ({x}, {y})")
                if x == y:
                    raise MalformedInput(f"coloring of diagonal pair ({x}, {x})")
            for x in pts:
                for y in pts:
                    if x != y and (x, y) not in coloring:
                        raise MalformedInput(f"coloring is partial: missing pair ({x}, {y})")
        self.cls = cls
        self.points = pts
        self._c = dict(coloring)
        self._hash = None
        self._set = frozenset(pts)

    @classmethod
    def build(cls_, cls: ClassSpec, points: Iterable[Label], colors: Mapping | None = None,
              default: Color | None = None) -> FinStructure:
        """Complete a partial coloring by mirroring through ``cls.reverse`` and
        filling absent pairs with ``default``."""
        pts = canonical(points)
        members = set(pts)
        full: dict = {}
        for (x, y), col in (colors or {}).items():
            if x not in members or y not in members:
                raise MalformedInput(f"pair ({x}, {y}) mentions an unknown point")
            if x == y:
                raise MalformedInput(f"diagonal pair ({x}, {x})")
            rev = cls.reverse(col)
            for key, val in (((x, y), col), ((y, x), rev)):
                if full.get(key, val) != val:
                    raise MalformedInput(f"conflicting colors for pair {key}")
                full[key] = val
        if default is not None:
            for x in pts:
                for y in pts:
                    if x != y and (x, y) not in full:
                        full[(x, y)] = default
        return cls_(cls, pts, full)

    @classmethod
    def empty(cls_, cls: ClassSpec) -> FinStructure:
        return cls_(cls, (), {})

    # access -----------------------------------------------------------------

    def color(self, x: Label, y: Label) -> Color:
        return self._c[(x, y)]

    def __contains__(self, point) -> bool:
        return point in self._set

    @property
    def point_set(self) -> frozenset:
        return self._set

    def __len__(self) -> int:
        return len(self.points)

    def ordered_pairs(self) -> Iterator[tuple]:
        for x in self.points:
            for y in self.points:
                if x != y:
                    yield (x, y)

    def coloring(self) -> dict:
        return dict(self._c)

    def realized_colors(self) -> set:
        return set(self._c.values())

    # derived structures ---------------------------------------------------

    def induced(self, subset: Iterable[Label]) -> FinStructure:
        return induced(self, subset)

    def relabel(self, mapping: Mapping) -> FinStructure:
        """Rename points; labels absent from ``mapping`` stay as they are."""
        m = {p: mapping.get(p, p) for p in self.points}
        if len(set(m.values())) != len(m):
            raise NotInjective("relabeling is not injective")
        return FinStructure(self.cls, m.values(), {(m[x], m[y]): c for (x, y), c in self._c.items()},
                            check=False)

    def extend(self, point: Label, colors_to: Mapping) -> FinStructure:
        """One-point extension; ``colors_to[e]`` is the color of ``(e, point)``."""
        if point in self.point_set:
            raise MalformedInput(f"point {point} already present")
        c = dict(self._c)
        for e in self.points:
            col = colors_to[e]
            c[(e, point)] = col
            c[(point, e)] = self.cls.reverse(col)
        return FinStructure(self.cls, self.points + (point,), c, check=False)

    # equality ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinStructure):
            return NotImplemented
        return self.cls == other.cls and self.point_set == other.point_set and self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.cls, self.point_set, frozenset(self._c.items())))
        return self._hash

    def __repr__(self) -> str:
        cls = self.cls
        shown = []
        for x, y in combinations(self.points, 2):
            col = self._c[(x, y)]
            if cls.kind in ("graph", "matching"):
                if col == "edge":
                    shown.append(f"{x}-{y}")
            elif cls.kind == "metric":
                shown.append(f"{x}{y}={cls.format_color(col)}")
            elif cls.kind == "partial_order" and col == "inc":
                continue
            elif cls.kind == "digraph" and col == "none":
                continue
            else:
                shown.append(f"{x} {col} {y}")
        pts = ",".join(str(p) for p in self.points)
        return f"<{cls} [{pts}; {', '.join(shown)}]>"


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    axiom: str | None = None
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


_CONVERSE_NAME = {"graph": "symmetry", "matching": "symmetry", "metric": "symmetry",
                  "digraph": "converse", "tournament": "antisymmetry",
                  "linear_order": "antisymmetry", "partial_order": "antisymmetry"}


def validate(s: FinStructure, focus: Iterable[Label] | None = None) -> ValidityReport:
    """Check ``s`` against its class axioms.

    With ``focus`` only pairs and triples touching a focus point are
    inspected; the caller vouches for the rest.
    """
    cls = s.cls
    pts = s.points
    members = set(pts)
    for x in pts:
        for y in pts:
            if x != y and (x, y) not in s._c:
                raise MalformedInput(f"coloring is partial: missing pair ({x}, {y})")
    if len(s._c) != len(pts) * (len(pts) - 1):
        raise MalformedInput("coloring references unknown points")
    hot = members if focus is None else set(focus) & members
    allowed = set(cls.color_set)
    c = s._c
    for x, y in s.ordered_pairs():
        if x not in hot and y not in hot:
            continue
        col = c[(x, y)]
        if col not in allowed:
            return ValidityReport(False, "colors", (x, y))
        if c[(y, x)] != cls.reverse(col):
            return ValidityReport(False, _CONVERSE_NAME[cls.kind], (x, y))
    kind = cls.kind
    if kind == "metric":
        for trio in combinations(pts, 3):
            if hot is not members and not hot.intersection(trio):
                continue
            a, b, d = trio
            for x, y, z in ((a, b, d), (a, d, b), (b, d, a)):
                if c[(x, y)] > c[(x, z)] + c[(z, y)]:
                    return ValidityReport(False, "triangle", trio)
    elif kind in ("linear_order", "partial_order"):
        for trio in combinations(pts, 3):
            if hot is not members and not hot.intersection(trio):
                continue
            for x, y, z in permutations(trio):
                if c[(x, y)] == "lt" and c[(y, z)] == "lt" and c[(x, z)] != "lt":
                    return ValidityReport(False, "transitivity", trio)
    elif kind == "matching":
        for v in pts:
            nbrs = [u for u in pts if u != v and c[(v, u)] == "edge"]
            if len(nbrs) > 1 and (v in hot or hot.intersection(nbrs)):
                return ValidityReport(False, "degree", (v, nbrs[0], nbrs[1]))
    return ValidityReport(True)


def is_valid(s: FinStructure, focus=None) -> bool:
    return validate(s, focus).ok


def induced(s: FinStructure, subset: Iterable[Label]) -> FinStructure:
    sub = set(subset)
    missing = sub - s.point_set
    if missing:
        raise UnknownPoint(f"points not in structure: {canonical(missing)}")
    c = {(x, y): col for (x, y), col in s._c.items() if x in sub and y in sub}
    return FinStructure(s.cls, sub, c, check=False)


def is_substructure(small: FinStructure, big: FinStructure) -> bool:
    """True iff ``small`` is an induced substructure of ``big`` (same labels)."""
    if small.cls != big.cls or not small.point_set <= big.point_set:
        return False
    return all(big._c[k] == v for k, v in small._c.items())


def leq(p: FinStructure, q: FinStructure) -> bool:
    """Forcing order: ``p <= q`` (p is stronger) iff q is a substructure of p."""
    return is_substructure(q, p)


@dataclass(frozen=True)
class PartialMap:
    """Finite injective partial function, stored as pairs sorted by source."""

    pairs: tuple = ()

    def __post_init__(self):
        pairs = tuple(sorted((tuple(p) for p in self.pairs), key=lambda p: label_key(p[0])))
        srcs = [a for a, _ in pairs]
        tgts = [b for _, b in pairs]
        if len(set(srcs)) != len(srcs):
            raise NotInjective("a source point is mapped twice")
        if len(set(tgts)) != len(tgts):
            raise NotInjective("map is not injective")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_dict(cls, d: Mapping) -> PartialMap:
        return cls(tuple(d.items()))

    @classmethod
    def identity(cls, points: Iterable[Label]) -> PartialMap:
        return cls(tuple((p, p) for p in points))

    def as_dict(self) -> dict:
        return dict(self.pairs)

    @property
    def domain(self) -> tuple:
        return tuple(a for a, _ in self.pairs)

    @property
    def image(self) -> tuple:
        return tuple(b for _, b in self.pairs)

    def __call__(self, x):
        for a, b in self.pairs:
            if a == x:
                return b
        raise KeyError(x)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def inverse(self) -> PartialMap:
        return PartialMap(tuple((b, a) for a, b in self.pairs))

    def then(self, other: PartialMap) -> PartialMap:
        """Composition: first ``self``, then ``other``."""
        o = other.as_dict()
        return PartialMap(tuple((a, o[b]) for a, b in self.pairs if b in o))

    def extended(self, a, b) -> PartialMap:
        return PartialMap(self.pairs + ((a, b),))

    def restrict(self, subset: Iterable[Label]) -> PartialMap:
        keep = set(subset)
        return PartialMap(tuple(p for p in self.pairs if p[0] in keep))

    def check_points(self, source: FinStructure, target: FinStructure) -> None:
        for a, b in self.pairs:
            if a not in source.point_set:
                raise UnknownPoint(f"{a} not in source")
            if b not in target.point_set:
                raise UnknownPoint(f"{b} not in target")

    def preserves(self, source: FinStructure, target: FinStructure) -> bool:
        """Color preservation in both argument orders on every pair of the domain."""
        for (a, b), (a2, b2) in combinations(self.pairs, 2):
            if source.color(a, a2) != target.color(b, b2) or source.color(a2, a) != target.color(b2, b):
                return False
        return True

    def is_total_bijection(self, source: FinStructure, target: FinStructure) -> bool:
        return set(self.domain) == source.point_set and set(self.image) == target.point_set

    def __repr__(self) -> str:
        return "{" + ", ".join(f"{a}->{b}" for a, b in self.pairs) + "}"


def _profile(s: FinStructure, x) -> tuple:
    cls = s.cls
    counts: dict = {}
    for y in s.points:
        if y != x:
            key = (cls.color_index(s._c[(x, y)]) if s._c[(x, y)] in cls.color_set else -1,
                   cls.color_index(s._c[(y, x)]) if s._c[(y, x)] in cls.color_set else -1)
            counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


def _extensions(a: FinStructure, b: FinStructure, fixed: Mapping, prune: bool) -> Iterator[dict]:
    """Backtracking over color-preserving injections a -> b extending ``fixed``."""
    order = [p for p in a.points if p in fixed] + [p for p in a.points if p not in fixed]
    prof_a = {p: _profile(a, p) for p in a.points} if prune else None
    prof_b = {p: _profile(b, p) for p in b.points} if prune else None
    ca, cb = a._c, b._c
    mapping = dict()
    used = set()

    def consistent(u, v) -> bool:
        for w, wv in mapping.items():
            if ca[(u, w)] != cb[(v, wv)] or ca[(w, u)] != cb[(wv, v)]:
                return False
        return True

    def rec(k):
        if k == len(order):
            yield dict(mapping)
            return
        u = order[k]
        cands = [fixed[u]] if u in fixed else b.points
        for v in cands:
            if v in used or v not in b.point_set:
                continue
            if prune and prof_a[u] != prof_b[v]:
                continue
            if not consistent(u, v):
                continue
            mapping[u] = v
            used.add(v)
            yield from rec(k + 1)
            del mapping[u]
            used.discard(v)

    yield from rec(0)


def find_isomorphism(a: FinStructure, b: FinStructure, fixed: Mapping | PartialMap | None = None
                     ) -> PartialMap | None:
    """First color-preserving bijection a -> b extending ``fixed``, or None."""
    if a.cls != b.cls:
        raise ClassMismatch(f"{a.cls} vs {b.cls}")
    if len(a) != len(b):
        return None
    fx = fixed.as_dict() if isinstance(fixed, PartialMap) else dict(fixed or {})
    for m in _extensions(a, b, fx, prune=True):
        return PartialMap.from_dict(m)
    return None


def iter_embeddings(a: FinStructure, b: FinStructure, fixed: Mapping | None = None) -> Iterator[PartialMap]:
    """All embeddings (color-preserving injections) of a into b, in search order."""
    if a.cls != b.cls:
        raise ClassMismatch(f"{a.cls} vs {b.cls}")
    for m in _extensions(a, b, dict(fixed or {}), prune=False):
        yield PartialMap.from_dict(m)


def canonical_code(s: FinStructure) -> tuple:
    """Lexicographically least color-index sequence over all point orders.

    Two structures of one class are isomorphic iff their codes agree.
    Exponential in ``len(s)``; meant for the small sizes of enumeration.
    """
    n = len(s)
    idx = s.cls.color_index
    c = s._c
    best = None
    for perm in permutations(s.points):
        code = tuple(idx(c[(perm[i], perm[j])]) for i in range(n) for j in range(n) if i != j)
        if best is None or code < best:
            best = code
    return (n,) + (best or ())


# small constructors used by tests, scripts and the CLI --------------------

def graph(points: Iterable[Label], edges: Iterable[tuple] = ()) -> FinStructure:
    return FinStructure.build(ClassSpec.graph(), points, {e: "edge" for e in edges}, default="non")


def matching_graph(points: Iterable[Label], edges: Iterable[tuple] = ()) -> FinStructure:
    return FinStructure.build(ClassSpec.matching(), points, {e: "edge" for e in edges}, default="non")


def digraph(points: Iterable[Label], arcs: Iterable[tuple] = ()) -> FinStructure:
    arcs = set(arcs)
    c = {}
    pts = canonical(points)
    for x, y in combinations(pts, 2):
        fw, bw = (x, y) in arcs, (y, x) in arcs
        c[(x, y)] = "both" if fw and bw else "to" if fw else "from" if bw else "none"
    return FinStructure.build(ClassSpec.digraph(), pts, c)


def tournament(points: Iterable[Label], arcs: Iterable[tuple]) -> FinStructure:
    return FinStructure.build(ClassSpec.tournament(), points, {a: "to" for a in arcs})


def linear_order(sequence: Iterable[Label]) -> FinStructure:
    """Linear order listing points from least to greatest."""
    seq = list(sequence)
    return FinStructure.build(ClassSpec.linear_order(), seq,
                              {(x, y): "lt" for x, y in combinations(seq, 2)})


def partial_order(points: Iterable[Label], less: Iterable[tuple] = ()) -> FinStructure:
    """Partial order from strict relations ``(x, y)`` meaning x < y (not closed)."""
    return FinStructure.build(ClassSpec.partial_order(), points, {p: "lt" for p in less}, default="inc")


def metric(points: Iterable[Label], distances: Mapping, K: Iterable | None = None) -> FinStructure:
    """Metric space from unordered distances; K defaults to the realized distances."""
    from .classes import as_rational

    d = {k: as_rational(v) for k, v in distances.items()}
    ks = set(d.values()) if K is None else {as_rational(k) for k in K}
    if not ks:
        ks = {1}
    return FinStructure.build(ClassSpec.metric(ks), points, d)
