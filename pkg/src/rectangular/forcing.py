"""Posets of finite conditions: compatibility, dense sets and filters.

A condition is a valid :class:`FinStructure` whose points are labels from a
global space (natural numbers for generated conditions).  ``p <= q`` (p is
stronger) means q is an induced substructure of p.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .amalgamation import AmalgamDiagram, disjoint_amalgam, rect_amalgam
from .classes import ClassSpec
from .delta import extract_delta_system, refine_by_root_type, root_isomorphism
from .errors import Budget, DensityFailure, NoAmalgamExists, ResourceLimit
from .structures import FinStructure, canonical, induced, is_valid, label_key, leq, validate

Condition = FinStructure


def compatible(p: Condition, q: Condition) -> Condition | None:
    """A common extension of p and q, or None when they are incompatible."""
    if p.cls != q.cls:
        return None
    common = p.point_set & q.point_set
    if induced(p, common) != induced(q, common):
        return None
    try:
        return disjoint_amalgam(p, q)
    except NoAmalgamExists:
        return None


def next_label(cond: Condition) -> int:
    ints = [x for x in cond.points if isinstance(x, int) and not isinstance(x, bool)]
    return max(ints, default=-1) + 1


def one_point_types(base: FinStructure) -> list[tuple]:
    """All one-point extension types over ``base`` valid in its class.

    A type is a tuple of ``(e, color)`` with ``color = c(e, new)``, in the
    canonical order of ``base.points``; types are listed in product order of
    the class colors.
    """
    from itertools import product

    cls = base.cls
    pts = base.points
    probe = _probe_label(base)
    out = []
    for combo in product(cls.color_set, repeat=len(pts)):
        ext = base.extend(probe, dict(zip(pts, combo)))
        if is_valid(ext, focus=[probe]):
            out.append(tuple(zip(pts, combo)))
    return out


def _probe_label(s: FinStructure):
    return ("probe",) if ("probe",) not in s.point_set else ("probe", len(s))


def realizes(x: FinStructure, d, type_: tuple) -> bool:
    base = {e for e, _ in type_}
    return d in x.point_set and d not in base and all(x.color(e, d) == col for e, col in type_)


# dense sets ---------------------------------------------------------------

class DenseSet:
    """A set of conditions with a membership test and an extension step."""

    description = "dense set"

    def contains(self, cond: Condition) -> bool:
        raise NotImplementedError

    def extend(self, cond: Condition, rng: random.Random | None = None) -> Condition | None:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.description


@dataclass(frozen=True, repr=False)
class PointInclusion(DenseSet):
    point: object

    @property
    def description(self) -> str:
        return f"point-inclusion({self.point})"

    def contains(self, cond: Condition) -> bool:
        return self.point in cond.point_set

    def extend(self, cond, rng=None):
        single = FinStructure(cond.cls, [self.point], {}, check=False)
        return _glue(cond, single, rng)


@dataclass(frozen=True, repr=False)
class TypeRealization(DenseSet):
    """Conditions holding the base and a point outside it realizing ``type_``."""

    type_: tuple

    @property
    def base(self) -> tuple:
        return tuple(e for e, _ in self.type_)

    @property
    def description(self) -> str:
        inner = ", ".join(f"{e}:{c}" for e, c in self.type_)
        return f"type-realization({{{inner}}})"

    def contains(self, cond: Condition) -> bool:
        if not set(self.base) <= cond.point_set:
            return False
        return any(realizes(cond, d, self.type_) for d in cond.points)

    def extend(self, cond, rng=None):
        for e in self.base:
            if e not in cond.point_set:
                cond = PointInclusion(e).extend(cond, rng)
                if cond is None:
                    return None
        new = next_label(cond)
        base = induced(cond, self.base)
        target = base.extend(new, dict(self.type_))
        if not is_valid(target):
            return None
        return _glue(cond, target, rng)


@dataclass(frozen=True, repr=False)
class UserPredicate(DenseSet):
    name: str
    member: Callable[[Condition], bool] = field(compare=False)
    step: Callable[[Condition], Condition | None] = field(compare=False)

    @property
    def description(self) -> str:
        return f"user-predicate({self.name})"

    def contains(self, cond):
        return self.member(cond)

    def extend(self, cond, rng=None):
        return self.step(cond)


_FREE_KINDS = ("graph", "digraph", "tournament")


def _glue(cond: Condition, piece: FinStructure, rng: random.Random | None) -> Condition | None:
    """Amalgamate ``piece`` onto ``cond`` over their common points.

    With ``rng`` the free cross colors are drawn at random when the class puts
    no constraint across them; otherwise the canonical amalgam is used.
    """
    common = cond.point_set & piece.point_set
    if induced(cond, common) != induced(piece, common):
        return None
    if rng is not None and cond.cls.kind in _FREE_KINDS:
        c = cond.coloring()
        c.update(piece.coloring())
        cls = cond.cls
        for a in cond.points:
            if a in common:
                continue
            for b in piece.points:
                if b in common:
                    continue
                col = rng.choice(cls.color_set)
                c[(a, b)] = col
                c[(b, a)] = cls.reverse(col)
        z = FinStructure(cls, cond.point_set | piece.point_set, c, check=False)
        if is_valid(z):
            return z
    try:
        return disjoint_amalgam(cond, piece)
    except NoAmalgamExists:
        return None


@dataclass
class Filter:
    """A descending chain of conditions; every member lies above the last one."""

    elements: list
    met: list = field(default_factory=list)  # (dense set, index of first member inside it)

    @property
    def generic(self) -> Condition:
        return self.elements[-1]

    def verify(self, dense: Iterable[DenseSet] = ()) -> bool:
        last = self.elements[-1]
        if not is_valid(last):
            return False
        if not all(leq(last, e) for e in self.elements):
            return False
        return all(any(d.contains(e) for e in self.elements) for d in dense)


def rasiowa_sikorski(start: Condition, dense: Sequence[DenseSet], seed: int | None = None) -> Filter:
    """Meet every dense set in turn by extending the current condition."""
    rng = None if seed is None else random.Random(seed)
    filt = Filter([start])
    for spec in dense:
        cur = filt.elements[-1]
        if spec.contains(cur):
            filt.met.append((spec, len(filt.elements) - 1))
            continue
        nxt = spec.extend(cur, rng)
        if nxt is None or not spec.contains(nxt) or not leq(nxt, cur):
            raise DensityFailure(spec)
        filt.elements.append(nxt)
        filt.met.append((spec, len(filt.elements) - 1))
    return filt


@dataclass
class GenericRun:
    structure: FinStructure
    filter: Filter
    scheduled: list        # TypeRealization / PointInclusion sets processed before the budget ran out
    unscheduled: list      # sets still queued when the size budget was exhausted


def generic_run(cls: ClassSpec, n: int, depth: int, seed: int = 0) -> GenericRun:
    """Grow a size-n condition meeting, round-robin, the dense sets asking to
    realize every one-point type over every base of size <= depth.

    Whenever a point appears, the bases it completes join the back of the
    queue in lexicographic order.  Ties among free colors are broken by a
    generator seeded with ``seed``.
    """
    if n < 0 or depth < 0:
        raise ValueError("size and depth must be nonnegative")
    budget = Budget("build_generic")
    rng = random.Random(seed)
    cond = FinStructure.empty(cls)
    filt = Filter([cond])
    queue: deque = deque()
    scheduled: list = []

    def enqueue_bases(new_point) -> None:
        pts = [p for p in cond.points if p != new_point]
        for k in range(0, depth):
            for rest in combinations(pts, k):
                base = canonical(rest + (new_point,))
                for t in one_point_types(induced(cond, base)):
                    queue.append(TypeRealization(t))

    if n > 0:
        queue.append(TypeRealization(()))
    while len(cond) < n:
        budget.tick()
        if queue:
            spec = queue.popleft()
        else:
            spec = PointInclusion(next_label(cond))
        scheduled.append(spec)
        if spec.contains(cond):
            filt.met.append((spec, len(filt.elements) - 1))
            continue
        nxt = spec.extend(cond, rng)
        if nxt is None:
            raise DensityFailure(spec)
        added = [p for p in nxt.points if p not in cond.point_set]
        cond = nxt
        filt.elements.append(cond)
        filt.met.append((spec, len(filt.elements) - 1))
        for p in sorted(added, key=label_key):
            enqueue_bases(p)
    return GenericRun(cond, filt, scheduled, list(queue))


def build_generic(cls: ClassSpec, n: int, depth: int, seed: int = 0) -> FinStructure:
    return generic_run(cls, n, depth, seed).structure


def find_compatible_pair(conditions: Sequence[Condition]) -> tuple[int, int, Condition] | None:
    """A compatible pair with a common extension, found the way c.c.c. proofs do.

    First a Δ-system of universes is extracted and refined by isomorphism
    type over its root; two members of one class are amalgamated with the
    class's splitting construction.  Failing that, pairs are tried by brute
    force in lexicographic order.
    """
    if len(conditions) < 2:
        raise ValueError("need at least two conditions")
    universes = [c.point_set for c in conditions]
    ds = None
    for r in range(len(conditions), 1, -1):
        try:
            ds = extract_delta_system(universes, r)
        except ResourceLimit:
            ds = None
        if ds is not None:
            break
    if ds is not None:
        members = [conditions[i] for i in ds.member_indices]
        for group in refine_by_root_type(members, ds.root):
            if len(group) < 2:
                continue
            i, j = ds.member_indices[group[0]], ds.member_indices[group[1]]
            p, q = conditions[i], conditions[j]
            h = root_isomorphism(p, q, ds.root)
            try:
                w = rect_amalgam(AmalgamDiagram(induced(p, ds.root), p, q, h))
            except NoAmalgamExists:
                w = compatible(p, q)
            if w is not None and validate(w).ok:
                return (min(i, j), max(i, j), w)
    for i, j in combinations(range(len(conditions)), 2):
        w = compatible(conditions[i], conditions[j])
        if w is not None:
            return (i, j, w)
    return None
