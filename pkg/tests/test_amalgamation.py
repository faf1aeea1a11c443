import random
from fractions import Fraction
from itertools import product

import pytest

from rectangular.alike import is_alike
from rectangular.amalgamation import (AmalgamDiagram, TRANSITIVITY_CASES, disjoint_amalgam, iter_amalgams,
                                      diagonal_distance, order_transitivity_cases, rect_amalgam,
                                      rect_amalgam_edge, rect_amalgam_metric, rect_amalgam_order,
                                      remainder_alike)
from rectangular.classes import ClassSpec
from rectangular.errors import InvalidDiagram, NoAmalgamExists
from rectangular.instances import random_diagram
from rectangular.structures import (PartialMap, graph, induced, is_valid, leq, linear_order, matching_graph,
                                    metric, partial_order, tournament)


def diagram(x, y, root, h):
    return AmalgamDiagram(induced(x, root), x, y, PartialMap.from_dict(h))


# disjoint amalgams ----------------------------------------------------------

def test_disjoint_graph_has_no_cross_edges():
    z = disjoint_amalgam(graph("x"), graph("y"))
    assert z == graph("xy")


def test_disjoint_metric_takes_largest_feasible():
    x = metric("rx", {("r", "x"): 1}, K=[1, 2])
    y = metric("ry", {("r", "y"): 1}, K=[1, 2])
    assert disjoint_amalgam(x, y).color("x", "y") == 2


def test_disjoint_metric_interval_matches_brute_force():
    rng = random.Random(2)
    K = [1, 2, 5]
    for _ in range(200):
        dr = {("r", "s"): rng.choice(K)}
        x = metric("rsx", {**dr, ("r", "x"): rng.choice(K), ("s", "x"): rng.choice(K)}, K=K)
        y = metric("rsy", {**dr, ("r", "y"): rng.choice(K), ("s", "y"): rng.choice(K)}, K=K)
        if not (is_valid(x) and is_valid(y)):
            continue
        feasible = [k for k in K if is_valid(metric("rsxy", {**x.coloring(), **y.coloring(), ("x", "y"): k}, K=K))]
        if not feasible:
            with pytest.raises(NoAmalgamExists):
                disjoint_amalgam(x, y)
        else:
            assert disjoint_amalgam(x, y).color("x", "y") == max(feasible)


def test_disjoint_linear_left_before_right():
    z = disjoint_amalgam(linear_order("rx"), linear_order("ry"))
    assert z == linear_order("rxy")


def test_disjoint_partial_closes_through_root():
    x = partial_order("ar", [("a", "r")])
    y = partial_order("rb", [("r", "b")])
    z = disjoint_amalgam(x, y)
    assert z.color("a", "b") == "lt" and is_valid(z)


def test_disjoint_tournament_left_to_right():
    z = disjoint_amalgam(tournament("x", []), tournament("y", []))
    assert z.color("x", "y") == "to"


def test_matching_has_no_strong_amalgam():
    with pytest.raises(NoAmalgamExists):
        disjoint_amalgam(matching_graph("rx", [("r", "x")]), matching_graph("ry", [("r", "y")]))


def test_exhaustive_amalgams_agree_with_canonical():
    rng = random.Random(4)
    for cls in (ClassSpec.partial_order(), ClassSpec.metric([1, 2, 3]), ClassSpec.matching()):
        for _ in range(30):
            d = random_diagram(cls, 3, rng)
            found = next(iter_amalgams(d.left, d.right), None)
            try:
                z = disjoint_amalgam(d.left, d.right)
            except NoAmalgamExists:
                z = None
            assert (found is None) == (z is None)


# rectangular amalgams -------------------------------------------------------

def test_metric_rect_equal_distances():
    x = metric(["x1", "x2"], {("x1", "x2"): 2}, K=[1, 2])
    y = metric(["y1", "y2"], {("y1", "y2"): 2}, K=[1, 2])
    z = rect_amalgam_metric(diagram(x, y, [], {"x1": "y1", "x2": "y2"}))
    assert {z.color(a, b) for a, b in z.ordered_pairs()} == {Fraction(2)}


@pytest.mark.parametrize("dist", [1, 3])
def test_metric_rect_over_root(dist):
    x = metric("rx", {("r", "x"): dist}, K=[1, 2, 3])
    y = metric("ry", {("r", "y"): dist}, K=[1, 2, 3])
    z = rect_amalgam_metric(diagram(x, y, ["r"], {"r": "r", "x": "y"}))
    assert z.color("x", "y") == dist and is_valid(z)


def test_metric_degenerate_distance_is_min_k():
    x = metric(["x"], {}, K=[2, 3])
    y = metric(["y"], {}, K=[2, 3])
    d = diagram(x, y, [], {"x": "y"})
    assert diagonal_distance(d) == 2
    assert rect_amalgam_metric(d).color("x", "y") == 2


def test_linear_rect_interleaves():
    d = diagram(linear_order(["x1", "x2"]), linear_order(["y1", "y2"]), [], {"x1": "y1", "x2": "y2"})
    assert rect_amalgam_order(d, "linear") == linear_order(["x1", "y1", "x2", "y2"])


def test_linear_rect_over_root():
    d = diagram(linear_order("rx"), linear_order("ry"), ["r"], {"r": "r", "x": "y"})
    assert rect_amalgam_order(d) == linear_order("rxy")


def test_partial_rect_keeps_matched_pairs_incomparable():
    x = partial_order(["x1", "x2"], [("x1", "x2")])
    y = partial_order(["y1", "y2"], [("y1", "y2")])
    d = diagram(x, y, [], {"x1": "y1", "x2": "y2"})
    z = rect_amalgam_order(d, "partial")
    assert z.color("x1", "y1") == "inc" and z.color("x2", "y2") == "inc"
    assert z.color("x1", "y2") == "lt" and z.color("y1", "x2") == "lt"
    assert is_alike(z, ["x1", "x2"], ["y1", "y2"]).alike


def test_one_sided_partial_rule_breaks_alikeness():
    x = partial_order(["x1", "x2"], [("x1", "x2")])
    y = partial_order(["y1", "y2"], [("y1", "y2")])
    d = diagram(x, y, [], {"x1": "y1", "x2": "y2"})
    z = rect_amalgam_order(d, "partial", one_sided=True)
    assert is_valid(z)
    assert z.color("x2", "y1") == "inc" and z.color("x1", "y2") == "lt"
    v = is_alike(z, ["x1", "x2"], ["y1", "y2"])
    assert not v.alike and v.violated_axiom == "A3a"


def test_graph_rect_rule():
    x = graph(["x1", "x2"], [("x1", "x2")])
    y = graph(["y1", "y2"], [("y1", "y2")])
    z = rect_amalgam_edge(diagram(x, y, [], {"x1": "y1", "x2": "y2"}))
    edges = {frozenset(p) for p in z.ordered_pairs() if z.color(*p) == "edge"}
    assert edges == {frozenset(e) for e in [("x1", "x2"), ("y1", "y2"), ("x1", "y2"), ("x2", "y1")]}


def test_tournament_rect_rule():
    x = tournament(["x1", "x2"], [("x1", "x2")])
    y = tournament(["y1", "y2"], [("y1", "y2")])
    d = diagram(x, y, [], {"x1": "y1", "x2": "y2"})
    z = rect_amalgam_edge(d)
    assert z.color("x1", "y1") == "to" and z.color("x2", "y2") == "to"
    assert z.color("x1", "y2") == "to" and z.color("y1", "x2") == "to"
    assert remainder_alike(z, d)


def test_empty_remainder_is_root():
    x = graph("ab", [("a", "b")])
    z = rect_amalgam(AmalgamDiagram.copy_of(x, x.points))
    assert z == x


def test_diagram_invariants_enforced():
    x = graph("ab", [("a", "b")])
    with pytest.raises(InvalidDiagram):
        diagram(x, graph("ac"), ["a"], {"a": "a", "b": "c"})
    with pytest.raises(InvalidDiagram):
        rect_amalgam_metric(AmalgamDiagram.copy_of(x, []))
    with pytest.raises(InvalidDiagram):
        rect_amalgam_order(AmalgamDiagram.copy_of(linear_order("ab"), []), "partial")


@pytest.mark.parametrize("cls", [ClassSpec.graph(), ClassSpec.digraph(), ClassSpec.tournament(),
                                 ClassSpec.linear_order(), ClassSpec.partial_order(),
                                 ClassSpec.metric([1, 2, 3]), ClassSpec.metric(["1/2", 1])], ids=str)
def test_random_rect_amalgams(cls):
    rng = random.Random(9)
    for _ in range(40):
        d = random_diagram(cls, rng.randint(1, 5), rng)
        z = rect_amalgam(d)
        assert is_valid(z)
        assert induced(z, d.left.points) == d.left and induced(z, d.right.points) == d.right
        assert leq(z, d.left) and leq(z, d.right)
        assert remainder_alike(z, d, all_enumerations=len(d.remainder) <= 4)


def test_linear_chain_cases_all_occur():
    seen = {}
    for perm_len in (2, 3):
        for root_mask in product((0, 1), repeat=perm_len + 1):
            x = linear_order(range(perm_len + 1))
            root = [p for p, m in zip(x.points, root_mask) if m]
            d = AmalgamDiagram.copy_of(x, root)
            for k, v in order_transitivity_cases(rect_amalgam(d), d).items():
                seen[k] = seen.get(k, 0) + v
    assert 0 not in seen
    assert set(seen) == set(TRANSITIVITY_CASES.values())
