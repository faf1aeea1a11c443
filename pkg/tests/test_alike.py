import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from rectangular.alike import (TupleFamily, alike, check_shift_invariance, derive_shift_invariance,
                               find_alike_pair, is_alike)
from rectangular.amalgamation import AmalgamDiagram, rect_amalgam_metric
from rectangular.classes import ClassSpec
from rectangular.errors import ArityMismatch, ShapeMismatch, TuplesNotDisjoint, UnknownPoint
from rectangular.instances import random_structure, shift_instance
from rectangular.structures import graph, linear_order, metric

CLASSES = [ClassSpec.graph(), ClassSpec.digraph(), ClassSpec.tournament(), ClassSpec.linear_order(),
           ClassSpec.partial_order(), ClassSpec.metric([1, 2, 3])]


def test_singletons_always_alike():
    g = graph("xyz", [("x", "y")])
    assert is_alike(g, ["x"], ["y"]).alike
    assert is_alike(linear_order("xy"), ["y"], ["x"]).alike


def test_blocked_order_fails_a3c():
    lo = linear_order(["x1", "x2", "y1", "y2"])
    v = is_alike(lo, ["x1", "x2"], ["y1", "y2"])
    assert not v.alike and v.violated_axiom == "A3c" and v.witness == (1, 2)


def test_interleaved_order_alike():
    lo = linear_order(["x1", "y1", "x2", "y2"])
    assert is_alike(lo, ["x1", "x2"], ["y1", "y2"]).alike


def test_metric_axiom_names():
    m = metric("abcd", {("a", "b"): 1, ("c", "d"): 1, ("a", "c"): 1, ("b", "d"): 2,
                        ("a", "d"): 2, ("b", "c"): 2})
    v = is_alike(m, "ab", "cd")
    assert not v.alike and v.violated_axiom == "A1" and v.witness == (1, 2)


def test_general_axiom_names():
    g = graph("abcd", [("a", "b")])
    v = is_alike(g, "ab", "cd")
    assert v.violated_axiom == "A2a"


def test_argument_errors():
    g = graph("abcd")
    with pytest.raises(ArityMismatch):
        is_alike(g, "ab", "c")
    with pytest.raises(TuplesNotDisjoint):
        is_alike(g, "ab", "bc")
    with pytest.raises(TuplesNotDisjoint):
        is_alike(g, "aa", "cd")
    with pytest.raises(UnknownPoint):
        is_alike(g, "az", "cd")


def test_find_alike_pair_examples():
    g = graph("abc", [("a", "b")])
    assert find_alike_pair(TupleFamily(g, [("a",), ("b",), ("c",)])) == (0, 1)
    lo = linear_order(["x1", "x2", "y1", "y2"])
    assert find_alike_pair(TupleFamily(lo, [("x1", "x2"), ("y1", "y2")])) is None


def test_family_must_be_disjoint():
    with pytest.raises(TuplesNotDisjoint):
        TupleFamily(graph("abc"), [("a", "b"), ("b", "c")])


@given(seed=st.integers(0, 10**6), which=st.sampled_from(range(len(CLASSES))), n=st.integers(1, 3))
@settings(max_examples=150, deadline=None)
def test_symmetric_and_permutation_invariant(seed, which, n):
    rng = random.Random(seed)
    s = random_structure(CLASSES[which], 6, rng)
    pts = rng.sample(s.points, 2 * n)
    xs, ys = pts[:n], pts[n:]
    v = alike(s, xs, ys)
    assert v == alike(s, ys, xs)
    for perm in permutations(range(n)):
        assert v == alike(s, [xs[i] for i in perm], [ys[i] for i in perm])


@pytest.mark.parametrize("cls", CLASSES, ids=str)
def test_symmetry_exhaustive_on_six_points(cls):
    """Every disjoint tuple pair with n <= 2 in a few structures on 6 points."""
    rng = random.Random(11)
    for _ in range(3):
        s = random_structure(cls, 6, rng)
        for n in (1, 2):
            for xs in permutations(s.points, n):
                rest = [p for p in s.points if p not in xs]
                for ys in permutations(rest, n):
                    assert alike(s, xs, ys) == alike(s, ys, xs)


def test_shift_single_block_vacuous():
    g = graph("abcd", [("a", "b")])
    assert check_shift_invariance(g, [("a",)], [("c",)], ("b",), ("d",))


def test_shift_two_metric_blocks():
    # blocks (1,2) and (3,4) are alike: matched pairs at 2, every other pair at 1
    x = metric([1, 2, 3, 4], {(1, 2): 1, (3, 4): 1, (1, 3): 2, (2, 4): 2, (1, 4): 1, (2, 3): 1}, K=[1, 2])
    assert alike(x, (1, 2), (3, 4))
    d = AmalgamDiagram.copy_of(x, [])
    z = rect_amalgam_metric(d)
    bx = [(1, 2), (3, 4)]
    by = [tuple(d.h(p) for p in b) for b in bx]
    assert check_shift_invariance(z, bx, by)


def test_shift_shape_mismatch():
    g = graph(range(6))
    with pytest.raises(ShapeMismatch):
        check_shift_invariance(g, [(0, 1)], [(2,)])


def test_derivation_refuses_unmet_hypotheses():
    lo = linear_order(["x1", "x2", "y1", "y2"])
    assert derive_shift_invariance(lo, [("x1",), ("x2",)], [("y1",), ("y2",)]) is None
    # the direct checker still answers truthfully
    assert check_shift_invariance(lo, [("x1",), ("x2",)], [("y1",), ("y2",)]) in (True, False)


@pytest.mark.parametrize("cls", CLASSES, ids=str)
def test_derivation_matches_definition(cls):
    rng = random.Random(5)
    for _ in range(20):
        inst = shift_instance(cls, rng, blocks=rng.randint(2, 3), arity=rng.randint(1, 2),
                              extra=rng.randint(0, 1), root=rng.randint(0, 1))
        args = (inst.ambient, inst.blocks_x, inst.blocks_y, inst.vx, inst.vy)
        assert derive_shift_invariance(*args) is True
        assert check_shift_invariance(*args)
