import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import all_isomorphisms
from rectangular.classes import ClassSpec
from rectangular.errors import ClassMismatch, MalformedInput, NotInjective, UnknownPoint
from rectangular.instances import random_structure
from rectangular.properties import enumerate_models
from rectangular.structures import (FinStructure, PartialMap, canonical_code, find_isomorphism, graph,
                                    induced, is_valid, leq, linear_order, metric, validate)

CLASSES = [ClassSpec.graph(), ClassSpec.digraph(), ClassSpec.tournament(), ClassSpec.linear_order(),
           ClassSpec.partial_order(), ClassSpec.metric([1, 2, 3]), ClassSpec.matching()]


def test_two_point_metric_is_valid():
    assert validate(metric("ab", {("a", "b"): 1}, K=[1, 2])).ok


def test_triangle_violation_names_the_triple():
    s = metric("abc", {("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 3}, K=[1, 3])
    rep = validate(s)
    assert not rep.ok and rep.axiom == "triangle" and rep.witness == ("a", "b", "c")


def test_cyclic_order_rejected():
    s = FinStructure.build(ClassSpec.linear_order(), "abc",
                           {("a", "b"): "lt", ("b", "c"): "lt", ("c", "a"): "lt"})
    rep = validate(s)
    assert not rep.ok and rep.axiom in ("transitivity", "antisymmetry")
    assert set(rep.witness) == {"a", "b", "c"}


def test_partial_coloring_is_malformed():
    with pytest.raises(MalformedInput):
        FinStructure(ClassSpec.graph(), "ab", {("a", "b"): "edge"})


def test_unknown_point_in_coloring():
    with pytest.raises(MalformedInput):
        FinStructure(ClassSpec.graph(), "a", {("a", "z"): "edge", ("z", "a"): "edge"})


def test_asymmetric_graph_flagged():
    s = FinStructure(ClassSpec.graph(), "ab", {("a", "b"): "edge", ("b", "a"): "non"})
    assert validate(s).axiom == "symmetry"


def test_metric_distances_are_exact():
    s = metric("ab", {("a", "b"): "1/2"}, K=["1/2", 1])
    assert s.color("a", "b") == Fraction(1, 2)
    with pytest.raises(MalformedInput):
        metric("ab", {("a", "b"): 0.5})


def test_induced_examples():
    s = metric("abc", {("a", "b"): 1, ("a", "c"): 2, ("b", "c"): 2})
    assert induced(s, {"a", "b"}) == metric("ab", {("a", "b"): 1}, K=[1, 2])
    assert induced(s, s.points) == s
    assert len(induced(s, set())) == 0
    with pytest.raises(UnknownPoint):
        induced(s, {"z"})


def test_isomorphism_examples():
    e = graph("xy", [("x", "y")])
    assert find_isomorphism(e, e).as_dict() == {"x": "x", "y": "y"}
    assert find_isomorphism(e, graph("uv")) is None
    p = find_isomorphism(graph("abc", [("a", "b"), ("b", "c")]), graph("pqr", [("p", "q"), ("q", "r")]))
    assert p.as_dict() in ({"a": "p", "b": "q", "c": "r"}, {"a": "r", "b": "q", "c": "p"})
    with pytest.raises(ClassMismatch):
        find_isomorphism(e, linear_order("xy"))


def test_isomorphism_respects_fixed_points():
    path = graph("abc", [("a", "b"), ("b", "c")])
    assert find_isomorphism(path, path, {"a": "c"}).as_dict() == {"a": "c", "b": "b", "c": "a"}
    assert find_isomorphism(path, path, {"a": "b"}) is None


def test_partial_map_rejects_non_injective():
    with pytest.raises(NotInjective):
        PartialMap.from_dict({"a": "x", "b": "x"})


def test_leq_is_reversed_substructure():
    big = graph("abc", [("a", "b")])
    assert leq(big, induced(big, "ab"))
    assert not leq(induced(big, "ab"), big)


@pytest.mark.parametrize("cls", CLASSES[:5] + [ClassSpec.metric([1, 2])], ids=str)
def test_isomorphism_matches_brute_force_up_to_4(cls):
    """find_isomorphism agrees with a permutation oracle and is symmetric."""
    rng = random.Random(3)
    models = [random_structure(cls, n, rng) for n in range(5) for _ in range(6)]
    for a in models:
        for b in models:
            if len(a) != len(b):
                continue
            got = find_isomorphism(a, b)
            assert (got is not None) == bool(all_isomorphisms(a, b))
            assert (got is not None) == (find_isomorphism(b, a) is not None)
            if got is not None:
                assert got.is_total_bijection(a, b) and got.preserves(a, b)


@pytest.mark.parametrize("cls", CLASSES, ids=str)
def test_enumerated_models_pairwise_nonisomorphic(cls):
    for n in range(4 if cls.kind != "metric" else 3):
        models = enumerate_models(cls, n)
        for a, b in combinations(models, 2):
            assert find_isomorphism(a, b) is None
        codes = {canonical_code(m) for m in models}
        assert len(codes) == len(models)


@given(seed=st.integers(0, 10**6), n=st.integers(0, 6), k=st.integers(0, 6),
       which=st.sampled_from(range(len(CLASSES))))
@settings(max_examples=60, deadline=None)
def test_hereditary_and_functorial(seed, n, k, which):
    rng = random.Random(seed)
    s = random_structure(CLASSES[which], n, rng)
    assert is_valid(s)
    a = rng.sample(s.points, min(k, n))
    b = rng.sample(a, len(a) // 2)
    assert is_valid(induced(s, a))
    assert induced(induced(s, a), b) == induced(s, b)


def test_relabel_and_extend():
    g = graph("ab", [("a", "b")])
    h = g.relabel({"a": 1, "b": 2})
    assert h.color(1, 2) == "edge"
    ext = g.extend("c", {"a": "edge", "b": "non"})
    assert ext.color("c", "a") == "edge" and ext.color("b", "c") == "non"
