import random
from itertools import combinations

import pytest

from oracles import all_isomorphisms
from rectangular.classes import ClassSpec
from rectangular.errors import MalformedInput, NoRealizer
from rectangular.forcing import generic_run
from rectangular.instances import random_structure
from rectangular.saturation import back_and_forth, extend_partial_iso, is_saturating
from rectangular.structures import PartialMap, find_isomorphism, graph

V = [f"v{i}" for i in range(5)]
C5 = graph(V, [(V[i], V[(i + 1) % 5]) for i in range(5)])


def test_anticlique_saturates_over_realized_types():
    s = graph("abc")
    assert is_saturating(s, "ab", 1, types="realized").saturating
    # asking for every class type also demands an edge, which no point realizes
    rep = is_saturating(s, "ab", 1, types="class")
    assert not rep.saturating and rep.replay(s, "ab")


def test_single_edge_lacks_non_neighbour():
    s = graph("ab", [("a", "b")])
    rep = is_saturating(s, "ab", 1)
    assert rep.counterexample == (("a",), (("a", "non"),))
    assert rep.replay(s, "ab")


def test_level_zero():
    s = graph("abc", [("a", "b")])
    assert is_saturating(s, s.points, 0).saturating
    assert not is_saturating(graph([]), [], 0).saturating
    assert is_saturating(graph([]), [], 0, types="realized").saturating


def test_bad_level():
    with pytest.raises(MalformedInput):
        is_saturating(graph("a"), "a", -1)


def test_restricted_type_list():
    s = graph("abc", [("a", "b")])
    assert is_saturating(s, "abc", 1, only=[(("a", "edge"),)]).saturating
    rep = is_saturating(s, "abc", 1, only=[(("a", "edge"), ("c", "edge"))])
    assert rep.saturating and rep.checked == 0    # base of size 2 exceeds the level


def test_extend_identity_start():
    assert extend_partial_iso(C5, C5, {}, "v0").as_dict() == {"v0": "v0"}


def test_extend_on_cycle_picks_first_realizer():
    got = extend_partial_iso(C5, C5, {"v0": "v1"}, "v1")
    assert got("v1") in ("v0", "v2")
    assert got.as_dict() == {"v0": "v1", "v1": "v0"}
    # both choices extend to automorphisms, so the first in label order is kept
    for image in ("v0", "v2"):
        assert back_and_forth(C5, C5, {"v0": "v1", "v1": image}).ok


def test_extend_backward():
    got = extend_partial_iso(C5, C5, {"v0": "v1"}, "v2", side="backward")
    # v2 is adjacent to v1 = image of v0, so its preimage must neighbour v0: v1 or v4
    assert got.as_dict() == {"v0": "v1", "v1": "v2"}


def test_no_realizer():
    with pytest.raises(NoRealizer):
        extend_partial_iso(graph("ab", [("a", "b")]), graph("uv"), {"a": "u"}, "b")


def test_blocks_restrict_matches():
    g = graph("abcd")
    got = extend_partial_iso(g, g, {}, "a", x_blocks={"a": 1, "b": 0, "c": 1, "d": 0},
                             y_blocks={"a": 0, "b": 0, "c": 1, "d": 1})
    assert got("a") == "c"


def test_back_and_forth_identity():
    assert back_and_forth(C5, C5).mapping == PartialMap.identity(V)


def test_back_and_forth_from_v0_to_v2():
    res = back_and_forth(C5, C5, {"v0": "v2"})
    assert res.ok and res.mapping("v0") == "v2"
    assert res.mapping.preserves(C5, C5) and res.mapping.is_total_bijection(C5, C5)
    assert res.mapping.as_dict() in all_isomorphisms(C5, C5)


def test_back_and_forth_failure():
    res = back_and_forth(graph("abc", [("a", "b"), ("b", "c")]), graph("abc", combinations("abc", 2)))
    assert not res.ok and res.trace


@pytest.mark.parametrize("g", [
    C5,
    graph(range(4), combinations(range(4), 2)),
    graph(range(6), [(a, b) for a in range(3) for b in range(3, 6)]),
], ids=["C5", "K4", "K33"])
def test_homogeneous_graphs_extend_every_single_point_map(g):
    for a in g.points:
        for b in g.points:
            assert back_and_forth(g, g, {a: b}).ok


def test_back_and_forth_agrees_with_isomorphism_search():
    rng = random.Random(6)
    for _ in range(60):
        a = random_structure(ClassSpec.tournament(), 5, rng)
        b = random_structure(ClassSpec.tournament(), 5, rng)
        assert back_and_forth(a, b).ok == (find_isomorphism(a, b) is not None)


def test_generic_graph_meets_its_schedule():
    run = generic_run(ClassSpec.graph(), 24, 2, seed=3)
    types = [spec.type_ for spec in run.scheduled if hasattr(spec, "type_")]
    rep = is_saturating(run.structure, run.structure.points, 2, only=types)
    assert rep.saturating and rep.checked == len(types)
