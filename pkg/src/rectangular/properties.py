"""Model enumeration and bounded checks of the class-level amalgamation properties."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterator

from .amalgamation import (AmalgamDiagram, disjoint_amalgam, fresh_labels, iter_amalgams,
                           pullback_amalgam, remainder_alike)
from .classes import ClassSpec
from .errors import Budget, NoAmalgamExists, ResourceLimit, resource_cap
from .structures import FinStructure, PartialMap, canonical_code, induced, is_valid, iter_embeddings

PROPERTIES = ("AP", "SP", "SAP", "RSP")


def enumerate_models(cls: ClassSpec, n: int, cap: int | None = None) -> list[FinStructure]:
    """One representative (points ``0..n-1``) per isomorphism type of size n."""
    if n < 0:
        raise ValueError("size must be nonnegative")
    cap = resource_cap() if cap is None else cap
    pairs = list(combinations(range(n), 2))
    total = len(cls.color_set) ** len(pairs)
    if total > cap:
        raise ResourceLimit(f"{total} candidate colorings exceed cap {cap}")
    seen: dict = {}
    for combo in product(cls.color_set, repeat=len(pairs)):
        c = {}
        for (i, j), col in zip(pairs, combo):
            c[(i, j)] = col
            c[(j, i)] = cls.reverse(col)
        s = FinStructure(cls, range(n), c, check=False)
        if not is_valid(s):
            continue
        code = canonical_code(s)
        if code not in seen:
            seen[code] = s
    return [seen[k] for k in sorted(seen)]


def _models_upto(cls: ClassSpec, bound: int) -> Iterator[FinStructure]:
    for n in range(0, bound + 1):
        yield from enumerate_models(cls, n)


def _subsets(points) -> Iterator[tuple]:
    for k in range(len(points) + 1):
        yield from combinations(points, k)


def isomorphic_diagrams(cls: ClassSpec, bound: int) -> Iterator[AmalgamDiagram]:
    """Every ``R ⊆ X`` with ``|X| <= bound`` (X up to isomorphism, R arbitrary),
    paired with a relabeled copy of X."""
    for x in _models_upto(cls, bound):
        for r in _subsets(x.points):
            yield AmalgamDiagram.copy_of(x, r)


def extension_cospans(cls: ClassSpec, bound: int) -> Iterator[tuple[FinStructure, FinStructure]]:
    """Every cospan ``R ⊆ X``, ``R ⊆ Y`` with ``X ∩ Y = R`` and both sides of size <= bound."""
    models = list(_models_upto(cls, bound))
    for x in models:
        for r in _subsets(x.points):
            root = induced(x, r)
            for y in models:
                if len(y) < len(r):
                    continue
                for emb in iter_embeddings(root, y):
                    inv = {b: a for a, b in emb}
                    rest = [p for p in y.points if p not in inv]
                    new = fresh_labels(set(x.points) | set(range(len(x) + len(y) + 1)), len(rest))
                    inv.update(zip(rest, new))
                    yield x, y.relabel(inv)


def find_amalgam(x: FinStructure, y: FinStructure) -> FinStructure | None:
    try:
        return disjoint_amalgam(x, y)
    except NoAmalgamExists:
        return None


def find_amalgam_with_identification(x: FinStructure, y: FinStructure) -> FinStructure | None:
    """Amalgam in which points of ``Y \\ R`` may be glued onto points of ``X \\ R``."""
    common = x.point_set & y.point_set
    left = [p for p in x.points if p not in common]
    right = [p for p in y.points if p not in common]
    for k in range(0, min(len(left), len(right)) + 1):
        for rs in combinations(right, k):
            for ls in permutations(left, k):
                glued = y.relabel(dict(zip(rs, ls)))
                shared = x.point_set & glued.point_set
                if induced(x, shared) != induced(glued, shared):
                    continue
                z = find_amalgam(x, glued)
                if z is not None:
                    return z
    return None


def find_rectangular_amalgam(d: AmalgamDiagram) -> FinStructure | None:
    """Search the rectangular amalgams of ``d``.

    The alike axioms pin every cross color except the one on matched pairs
    ``(x, h(x))``, so trying each diagonal color covers the whole search space.
    """
    for col in d.cls.color_set:
        z = pullback_amalgam(d, col)
        if is_valid(z) and remainder_alike(z, d):
            return z
    return None


@dataclass(frozen=True)
class PropertyReport:
    property: str
    cls: ClassSpec
    bound: int
    holds: bool
    counterexample: tuple | None = None   # (R, X, Y, h); h is None outside SP/RSP
    diagrams_checked: int = 0
    notes: tuple = field(default=())

    @property
    def verdict(self) -> str:
        return "holds-up-to-bound" if self.holds else "counterexample"

    def replay(self) -> bool:
        """Re-run the failed search on the counterexample; True iff it fails again."""
        if self.counterexample is None:
            return False
        R, X, Y, h = self.counterexample
        return _diagram_fails(self.property, X, Y, h)


def _diagram_fails(prop: str, x: FinStructure, y: FinStructure, h: PartialMap | None) -> bool:
    if prop in ("SP", "SAP"):
        return find_amalgam(x, y) is None
    if prop == "AP":
        return find_amalgam_with_identification(x, y) is None
    root = induced(x, x.point_set & y.point_set)
    return find_rectangular_amalgam(AmalgamDiagram(root, x, y, h)) is None


def check_property(cls: ClassSpec, prop: str, bound: int) -> PropertyReport:
    """Bounded exhaustive check of AP, SP, SAP or RSP over diagrams with |X| <= bound."""
    if prop not in PROPERTIES:
        raise ValueError(f"property must be one of {PROPERTIES}")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    budget = Budget(f"check_property {prop}")
    checked = 0
    if prop in ("SP", "RSP"):
        for d in isomorphic_diagrams(cls, bound):
            budget.tick()
            checked += 1
            if _diagram_fails(prop, d.left, d.right, d.h):
                return PropertyReport(prop, cls, bound, False, (d.root, d.left, d.right, d.h), checked)
    else:
        for x, y in extension_cospans(cls, bound):
            budget.tick()
            checked += 1
            if _diagram_fails(prop, x, y, None):
                root = induced(x, x.point_set & y.point_set)
                return PropertyReport(prop, cls, bound, False, (root, x, y, None), checked)
    return PropertyReport(prop, cls, bound, True, None, checked)


__all__ = [
    "PROPERTIES", "PropertyReport", "check_property", "enumerate_models", "extension_cospans",
    "find_amalgam", "find_amalgam_with_identification", "find_rectangular_amalgam",
    "isomorphic_diagrams", "iter_amalgams",
]
