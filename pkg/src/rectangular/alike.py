"""The alike relation on pairs of disjoint tuples, and searches over tuple families.

Three axiom families are decided, picked from the ambient class:

* metric: A1, A2, A3;
* linear orders: A1c, A2c, A3c;
* every other coloring: A1a, A1b, A2a, A3a.

Witness indices are 1-based, matching the usual ``x_1, ..., x_n`` notation.
Entries inside one tuple must be distinct.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain
from typing import Sequence

from .errors import ArityMismatch, ShapeMismatch, TuplesNotDisjoint, UnknownPoint
from .structures import FinStructure


@dataclass(frozen=True)
class AlikeVerdict:
    alike: bool
    violated_axiom: str | None = None
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.alike


_YES = AlikeVerdict(True)


def _check_tuples(ambient: FinStructure, xs: Sequence, ys: Sequence) -> None:
    if len(xs) != len(ys):
        raise ArityMismatch(f"arities {len(xs)} and {len(ys)} differ")
    if len(xs) == 0:
        raise ArityMismatch("tuples must be nonempty")
    for t in (xs, ys):
        if len(set(t)) != len(t):
            raise TuplesNotDisjoint(f"tuple {tuple(t)} repeats an entry")
        for p in t:
            if p not in ambient:
                raise UnknownPoint(f"{p} not in ambient structure")
    if set(xs) & set(ys):
        raise TuplesNotDisjoint(f"{tuple(xs)} and {tuple(ys)} share points")


def _pairs(n: int):
    for i in range(n):
        for j in range(n):
            if i != j:
                yield i, j


def _metric(c, xs, ys) -> AlikeVerdict:
    n = len(xs)
    for i, j in _pairs(n):
        if c(xs[i], ys[i]) != c(xs[j], ys[j]):
            return AlikeVerdict(False, "A1", (i + 1, j + 1))
    for i, j in _pairs(n):
        if c(xs[i], xs[j]) != c(ys[i], ys[j]):
            return AlikeVerdict(False, "A2", (i + 1, j + 1))
    for i, j in _pairs(n):
        if c(xs[i], xs[j]) != c(xs[i], ys[j]):
            return AlikeVerdict(False, "A3", (i + 1, j + 1))
    return _YES


def _linear(c, xs, ys) -> AlikeVerdict:
    def lt(a, b):
        return c(a, b) == "lt"

    n = len(xs)
    for i, j in _pairs(n):
        if lt(xs[i], ys[i]) != lt(xs[j], ys[j]):
            return AlikeVerdict(False, "A1c", (i + 1, j + 1))
    for i, j in _pairs(n):
        if lt(xs[i], xs[j]) != lt(ys[i], ys[j]):
            return AlikeVerdict(False, "A2c", (i + 1, j + 1))
    for i, j in _pairs(n):
        a = lt(xs[i], xs[j])
        if a != lt(xs[i], ys[j]) or a != lt(ys[i], xs[j]):
            return AlikeVerdict(False, "A3c", (i + 1, j + 1))
    return _YES


def _general(c, xs, ys) -> AlikeVerdict:
    n = len(xs)
    for i, j in _pairs(n):
        if c(xs[i], ys[i]) != c(xs[j], ys[j]):
            return AlikeVerdict(False, "A1a", (i + 1, j + 1))
    for i, j in _pairs(n):
        if c(ys[i], xs[i]) != c(ys[j], xs[j]):
            return AlikeVerdict(False, "A1b", (i + 1, j + 1))
    for i, j in _pairs(n):
        if c(xs[i], xs[j]) != c(ys[i], ys[j]):
            return AlikeVerdict(False, "A2a", (i + 1, j + 1))
    for i, j in _pairs(n):
        a = c(xs[i], xs[j])
        if a != c(xs[i], ys[j]) or a != c(ys[i], xs[j]):
            return AlikeVerdict(False, "A3a", (i + 1, j + 1))
    return _YES


def axiom_family(ambient: FinStructure) -> str:
    kind = ambient.cls.kind
    if kind == "metric":
        return "metric"
    if kind == "linear_order":
        return "linear"
    return "general"


_DECIDERS = {"metric": _metric, "linear": _linear, "general": _general}


def is_alike(ambient: FinStructure, xs: Sequence, ys: Sequence, family: str | None = None) -> AlikeVerdict:
    """Decide ``xs ⊛ ys`` in ``ambient``; reports the first violated axiom.

    ``family`` forces an axiom family ("metric", "linear", "general") instead
    of the one implied by the ambient class.
    """
    xs, ys = tuple(xs), tuple(ys)
    _check_tuples(ambient, xs, ys)
    return _DECIDERS[family or axiom_family(ambient)](ambient.color, xs, ys)


def alike(ambient: FinStructure, xs: Sequence, ys: Sequence) -> bool:
    return is_alike(ambient, xs, ys).alike


@dataclass(frozen=True)
class TupleFamily:
    """Indexed, pairwise disjoint n-tuples of points of one ambient structure."""

    ambient: FinStructure
    tuples: tuple

    def __post_init__(self):
        tuples = tuple(tuple(t) for t in self.tuples)
        object.__setattr__(self, "tuples", tuples)
        if tuples:
            n = len(tuples[0])
            if n == 0 or any(len(t) != n for t in tuples):
                raise ArityMismatch("tuples of a family share one positive arity")
        seen: set = set()
        for t in tuples:
            if len(set(t)) != len(t):
                raise TuplesNotDisjoint(f"tuple {t} repeats an entry")
            for p in t:
                if p not in self.ambient:
                    raise UnknownPoint(f"{p} not in ambient structure")
            if seen & set(t):
                raise TuplesNotDisjoint(f"tuple {t} meets an earlier tuple")
            seen.update(t)

    @property
    def arity(self) -> int:
        return len(self.tuples[0]) if self.tuples else 0

    def __len__(self) -> int:
        return len(self.tuples)


def find_alike_pair(family: TupleFamily) -> tuple[int, int] | None:
    """Lexicographically first ``(i, j)``, ``i < j``, with alike tuples."""
    ts = family.tuples
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            if alike(family.ambient, ts[i], ts[j]):
                return (i, j)
    return None


def _shape(blocks_x, blocks_y, vx, vy) -> int:
    if len(blocks_x) != len(blocks_y) or len(vx) != len(vy):
        raise ShapeMismatch("x and y sides must have the same block structure")
    arities = {len(b) for b in chain(blocks_x, blocks_y)}
    if len(arities) > 1:
        raise ShapeMismatch("all blocks must share one arity")
    return arities.pop() if arities else 0


def check_shift_invariance(ambient: FinStructure, blocks_x: Sequence[Sequence], blocks_y: Sequence[Sequence],
                           vx: Sequence = (), vy: Sequence = ()) -> bool:
    """True iff the p-th x-block is alike with the r-th y-block for all p != r.

    Evaluated straight from the axioms; hypotheses are not consulted.
    """
    _shape(blocks_x, blocks_y, vx, vy)
    cx = tuple(chain.from_iterable(blocks_x)) + tuple(vx)
    cy = tuple(chain.from_iterable(blocks_y)) + tuple(vy)
    if cx:
        _check_tuples(ambient, cx, cy)
    m = len(blocks_x)
    return all(alike(ambient, blocks_x[p], blocks_y[r]) for p in range(m) for r in range(m) if p != r)


def derive_shift_invariance(ambient: FinStructure, blocks_x: Sequence[Sequence], blocks_y: Sequence[Sequence],
                            vx: Sequence = (), vy: Sequence = ()) -> bool | None:
    """Replay the equality chains that transport alikeness across blocks.

    Returns None when the hypotheses fail (concatenations alike, x-blocks
    pairwise alike).  Otherwise every link of every chain is checked on the
    actual colors and the result says whether all links held.  Only the
    general (pair-coloring) form is replayed; metric and order classes are
    pair-colorings too, so the same chains apply.
    """
    n = _shape(blocks_x, blocks_y, vx, vy)
    cx = tuple(chain.from_iterable(blocks_x)) + tuple(vx)
    cy = tuple(chain.from_iterable(blocks_y)) + tuple(vy)
    if not cx:
        return True
    if not is_alike(ambient, cx, cy, family="general"):
        return None
    m = len(blocks_x)
    for p in range(m):
        for r in range(p + 1, m):
            if not is_alike(ambient, blocks_x[p], blocks_x[r], family="general"):
                return None
    c = ambient.color
    X, Y = blocks_x, blocks_y
    for p in range(m):
        for r in range(m):
            if p == r:
                continue
            for i in range(n):
                for j in range(n):
                    # diagonal colors: c(x^p_i, y^r_i) = c(x^p_i, x^r_i) = c(x^p_j, x^r_j) = c(x^p_j, y^r_j)
                    links = [
                        (c(X[p][i], Y[r][i]), c(X[p][i], X[r][i])),
                        (c(X[p][i], X[r][i]), c(X[p][j], X[r][j])),
                        (c(X[p][j], X[r][j]), c(X[p][j], Y[r][j])),
                        (c(Y[r][i], X[p][i]), c(X[r][i], X[p][i])),
                        (c(X[r][i], X[p][i]), c(X[r][j], X[p][j])),
                        (c(X[r][j], X[p][j]), c(Y[r][j], X[p][j])),
                    ]
                    if i != j:
                        links += [
                            # inner colors: c(x^p_i, x^p_j) = c(x^r_i, x^r_j) = c(y^r_i, y^r_j)
                            (c(X[p][i], X[p][j]), c(X[r][i], X[r][j])),
                            (c(X[r][i], X[r][j]), c(Y[r][i], Y[r][j])),
                            # mixed colors: c(x^p_i, x^p_j) = c(x^p_i, x^r_j) = c(x^p_i, y^r_j)
                            (c(X[p][i], X[p][j]), c(X[p][i], X[r][j])),
                            (c(X[p][i], X[r][j]), c(X[p][i], Y[r][j])),
                            # c(y^r_i, x^p_j) = c(x^r_i, x^p_j) = c(x^r_i, x^r_j) = c(x^p_i, x^p_j)
                            (c(Y[r][i], X[p][j]), c(X[r][i], X[p][j])),
                            (c(X[r][i], X[p][j]), c(X[r][i], X[r][j])),
                            (c(X[r][i], X[r][j]), c(X[p][i], X[p][j])),
                        ]
                    if any(a != b for a, b in links):
                        return False
    return True
