"""Δ-system extraction and refinement of condition families by type over a root."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import Budget, MalformedInput, RootNotContained
from .structures import FinStructure, PartialMap, find_isomorphism, induced, label_key

EXACT_CAP = 20


@dataclass(frozen=True)
class DeltaSystem:
    root: frozenset
    member_indices: tuple

    def verify(self, sets: Sequence[Iterable]) -> bool:
        members = [frozenset(sets[i]) for i in self.member_indices]
        return all(a & b == self.root for k, a in enumerate(members) for b in members[k + 1:])


def _exact(sets: list[frozenset], r: int, budget: Budget) -> DeltaSystem | None:
    """Lexicographically first index r-subset forming a Δ-system, then greedily extended."""
    n = len(sets)

    def rec(chosen: list, root: frozenset | None, start: int):
        if len(chosen) == r:
            return list(chosen), root
        for i in range(start, n):
            if n - i < r - len(chosen):
                break
            budget.tick()
            if not chosen:
                new_root = None
            elif len(chosen) == 1:
                new_root = sets[chosen[0]] & sets[i]
            elif all(sets[j] & sets[i] == root for j in chosen):
                new_root = root
            else:
                continue
            chosen.append(i)
            got = rec(chosen, new_root, i + 1)
            chosen.pop()
            if got:
                return got
        return None

    got = rec([], None, 0)
    if not got:
        return None
    chosen, root = got
    for i in range(chosen[-1] + 1, n):
        if all(sets[j] & sets[i] == root for j in chosen):
            chosen.append(i)
    return DeltaSystem(frozenset(root), tuple(sorted(chosen)))


def _sunflower(indices: list[int], sets: list[frozenset], r: int, core: frozenset) -> DeltaSystem | None:
    """Classical sunflower recursion on the petals ``sets[i] - core``."""
    petals = {i: sets[i] - core for i in indices}
    disjoint: list[int] = []
    used: set = set()
    for i in indices:
        if not petals[i] & used:
            disjoint.append(i)
            used |= petals[i]
    if len(disjoint) >= r:
        return DeltaSystem(core, tuple(sorted(disjoint)))
    counts = Counter(p for i in indices for p in petals[i] if p in used)
    if not counts:
        return None
    for elem, _ in sorted(counts.items(), key=lambda kv: (-kv[1], label_key(kv[0]))):
        sub = [i for i in indices if elem in petals[i]]
        if len(sub) < r:
            break
        got = _sunflower(sub, sets, r, core | {elem})
        if got is not None:
            return got
    return None


def extract_delta_system(sets: Sequence[Iterable], r: int, exact_cap: int = EXACT_CAP) -> DeltaSystem | None:
    """A Δ-system of at least ``r`` members, or None if none exists.

    Families of at most ``exact_cap`` sets are searched exactly.  Larger ones
    go through the sunflower recursion per set size first (largest group
    first) and fall back to the exact search under the resource cap.
    """
    if r < 2:
        raise MalformedInput("target count r must be at least 2")
    fam = [frozenset(s) for s in sets]
    if len(fam) < r:
        return None
    budget = Budget("delta-system search")
    if len(fam) > exact_cap:
        by_size: dict[int, list[int]] = {}
        for i, s in enumerate(fam):
            by_size.setdefault(len(s), []).append(i)
        for size, idx in sorted(by_size.items(), key=lambda kv: (-len(kv[1]), kv[0])):
            if len(idx) < r:
                continue
            # duplicates would share every point; keep first occurrences only
            seen: dict = {}
            for i in idx:
                seen.setdefault(fam[i], i)
            got = _sunflower(sorted(seen.values()), fam, r, frozenset())
            if got is not None and got.verify(fam):
                return got
    return _exact(fam, r, budget)


def root_isomorphism(p: FinStructure, q: FinStructure, root: Iterable) -> PartialMap | None:
    """Isomorphism p -> q fixing ``root`` pointwise, if any."""
    rt = set(root)
    if not rt <= p.point_set or not rt <= q.point_set:
        raise RootNotContained("root must lie in both universes")
    if induced(p, rt) != induced(q, rt):
        return None
    return find_isomorphism(p, q, fixed={x: x for x in rt})


def refine_by_root_type(conditions: Sequence[FinStructure], root: Iterable) -> list[list[int]]:
    """Group condition indices by (root restriction, extension type over the root).

    Groups appear in order of their first member.
    """
    rt = frozenset(root)
    for k, c in enumerate(conditions):
        if not rt <= c.point_set:
            raise RootNotContained(f"condition {k} does not contain the root")
    groups: list[list[int]] = []
    for k, c in enumerate(conditions):
        for g in groups:
            if root_isomorphism(conditions[g[0]], c, rt) is not None:
                g.append(k)
                break
        else:
            groups.append([k])
    return groups
