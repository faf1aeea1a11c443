"""Seeded generators of random valid structures and of the constructed
instances used by the property suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain

from .amalgamation import AmalgamDiagram, disjoint_amalgam, rect_amalgam
from .classes import ClassSpec
from .errors import NoAmalgamExists
from .structures import FinStructure, PartialMap, induced, is_valid, partial_order


def random_structure(cls: ClassSpec, n: int, rng: random.Random, density: float = 0.5) -> FinStructure:
    """A random valid structure on points ``0..n-1``."""
    pts = list(range(n))
    kind = cls.kind
    c: dict = {}

    def put(a, b, col):
        c[(a, b)] = col
        c[(b, a)] = cls.reverse(col)

    if kind == "linear_order":
        perm = rng.sample(pts, n)
        for i, a in enumerate(perm):
            for b in perm[i + 1:]:
                put(a, b, "lt")
    elif kind == "partial_order":
        perm = rng.sample(pts, n)
        less = [(a, b) for i, a in enumerate(perm) for b in perm[i + 1:] if rng.random() < density]
        return partial_order(pts, _closure(pts, less))
    elif kind == "matching":
        free = rng.sample(pts, n)
        for a in pts:
            for b in pts:
                if a < b:
                    put(a, b, "non")
        while len(free) >= 2 and rng.random() < density + 0.3:
            put(free.pop(), free.pop(), "edge")
    elif kind == "metric":
        s = FinStructure(cls, [], {})
        top = cls.color_set[-1]
        for p in pts:
            for _ in range(50):
                t = s.extend(p, {q: rng.choice(cls.color_set) for q in s.points})
                if is_valid(t, focus=[p]):
                    break
            else:
                t = s.extend(p, {q: top for q in s.points})
            s = t
        return s
    else:
        for a in pts:
            for b in pts:
                if a < b:
                    if kind == "graph":
                        col = "edge" if rng.random() < density else "non"
                    else:
                        col = rng.choice(cls.color_set)
                    put(a, b, col)
    s = FinStructure(cls, pts, c)
    assert is_valid(s)
    return s


def _closure(pts, less):
    rel = set(less)
    for k in pts:
        for a in pts:
            for b in pts:
                if (a, k) in rel and (k, b) in rel:
                    rel.add((a, b))
    return rel


def random_diagram(cls: ClassSpec, n: int, rng: random.Random) -> AmalgamDiagram:
    x = random_structure(cls, n, rng)
    root = [p for p in x.points if rng.random() < 0.4]
    return AmalgamDiagram.copy_of(x, root)


# blocks that are pairwise alike, and the shift-invariance setting ---------

@dataclass(frozen=True)
class ShiftInstance:
    ambient: FinStructure
    blocks_x: tuple
    blocks_y: tuple
    vx: tuple
    vy: tuple


def _add_alike_block(s: FinStructure, block: tuple) -> tuple[FinStructure, tuple]:
    """Glue a copy of ``block`` over the rest of s so the two blocks are alike."""
    rest = [p for p in s.points if p not in block]
    d = AmalgamDiagram.copy_of(s, rest)
    z = rect_amalgam(d)
    return z, tuple(d.h(p) for p in block)


def shift_instance(cls: ClassSpec, rng: random.Random, blocks: int = 3, arity: int = 2,
                   extra: int = 1, root: int = 1) -> ShiftInstance:
    """Iterate rectangular amalgams: first m pairwise alike x-blocks, then a copy
    of their concatenation (plus ``extra`` points) over a common root."""
    n0 = root + arity + extra
    s = random_structure(cls, n0, rng)
    pts = list(s.points)
    rng.shuffle(pts)
    r_pts, first, v = pts[:root], tuple(pts[root:root + arity]), tuple(pts[root + arity:])
    xs = [first]
    for _ in range(blocks - 1):
        s, nxt = _add_alike_block(s, xs[-1])
        xs.append(nxt)
    d = AmalgamDiagram.copy_of(s, r_pts)
    z = rect_amalgam(d)
    ys = tuple(tuple(d.h(p) for p in b) for b in xs)
    return ShiftInstance(z, tuple(xs), ys, v, tuple(d.h(p) for p in v))


# the color-preserving-subfunction poset ----------------------------------

@dataclass(frozen=True)
class PfInstance:
    ambient: FinStructure
    f: PartialMap
    root: tuple
    e1: tuple      # remainder of the first condition
    e2: tuple      # remainder of the second condition

    @property
    def cond1(self) -> tuple:
        return self.root + self.e1

    @property
    def cond2(self) -> tuple:
        return self.root + self.e2

    def tuples(self) -> tuple[tuple, tuple]:
        """Remainder followed by its image, for each condition."""
        f = self.f
        return (self.e1 + tuple(f(p) for p in self.e1), self.e2 + tuple(f(p) for p in self.e2))


def pf_instance(rng: random.Random, K=None, root: int | None = None, size: int | None = None) -> PfInstance:
    """Two conditions of the poset of finite sets on which f is an isometry,
    sharing a root, whose remainder-plus-image tuples are alike.

    A random metric E and an isometric copy f[E] are amalgamated; then the
    remainder of E together with its image is duplicated over root and
    f[root] by the rectangular metric amalgam, and f is extended to the copy.
    """
    if K is None:
        K = sorted(rng.sample(range(1, 7), rng.randint(1, 4)))
    cls = ClassSpec.metric([Fraction(k) for k in K])
    k_root = rng.randint(0, 2) if root is None else root
    k_rem = rng.randint(1, 3) if size is None else size
    n = k_root + k_rem
    while True:
        e = random_structure(cls, n, rng)
        img = e.relabel({p: p + n for p in e.points})
        try:
            a = disjoint_amalgam(e, img)
        except NoAmalgamExists:
            continue
        break
    f = {p: p + n for p in e.points}
    root_pts = tuple(range(k_root))
    rem = tuple(range(k_root, n))
    base = root_pts + tuple(f[p] for p in root_pts)
    d = AmalgamDiagram.copy_of(a, base)
    z = rect_amalgam(d)
    rem2 = tuple(d.h(p) for p in rem)
    for p in rem:
        f[d.h(p)] = d.h(f[p])
    return PfInstance(z, PartialMap.from_dict(f), root_pts, rem, rem2)


def flatten(blocks) -> tuple:
    return tuple(chain.from_iterable(blocks))
