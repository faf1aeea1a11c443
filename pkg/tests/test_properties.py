import pytest

from rectangular.classes import ClassSpec
from rectangular.errors import MalformedInput, ResourceLimit
from rectangular.properties import (check_property, enumerate_models, extension_cospans, find_amalgam,
                                    find_amalgam_with_identification)
from rectangular.structures import graph, induced


def test_class_spec_invariants():
    assert ClassSpec.tournament().colors == ("to", "from")
    assert ClassSpec.metric([3, 1, 2]).colors == (1, 2, 3)
    with pytest.raises(MalformedInput):
        ClassSpec.metric([])
    with pytest.raises(MalformedInput):
        ClassSpec.metric([0, 1])
    with pytest.raises(MalformedInput):
        ClassSpec("hypergraph")


@pytest.mark.parametrize("cls,n,count", [
    (ClassSpec.graph(), 0, 1),
    (ClassSpec.graph(), 3, 4),
    (ClassSpec.graph(), 4, 11),
    (ClassSpec.linear_order(), 3, 1),
    (ClassSpec.tournament(), 3, 2),
    (ClassSpec.tournament(), 4, 4),
    (ClassSpec.partial_order(), 3, 5),
    (ClassSpec.partial_order(), 4, 16),
    (ClassSpec.digraph(), 2, 3),
    (ClassSpec.metric([1, 2]), 3, 4),
    (ClassSpec.matching(), 4, 3),
], ids=lambda v: str(v))
def test_model_counts(cls, n, count):
    # counts of unlabeled structures: standard OEIS values (graphs A000088,
    # tournaments A000568, posets A000112) plus hand counts for the rest
    assert len(enumerate_models(cls, n)) == count


def test_empty_graph_model():
    assert enumerate_models(ClassSpec.graph(), 0) == [graph([])]


def test_enumeration_cap():
    with pytest.raises(ResourceLimit):
        enumerate_models(ClassSpec.graph(), 6, cap=100)


def test_metric_sp_holds():
    rep = check_property(ClassSpec.metric([1, 2, 3]), "SP", 3)
    assert rep.holds and rep.verdict == "holds-up-to-bound"


def test_graph_rsp_holds():
    assert check_property(ClassSpec.graph(), "RSP", 3).holds


def test_matching_sp_counterexample_replays():
    rep = check_property(ClassSpec.matching(), "SP", 2)
    assert not rep.holds
    R, X, Y, h = rep.counterexample
    assert len(R) == 1 and len(X) == len(Y) == 2
    (r,) = R.points
    x, = [p for p in X.points if p != r]
    y, = [p for p in Y.points if p != r]
    assert X.color(r, x) == "edge" and Y.color(r, y) == "edge"
    assert rep.replay()


@pytest.mark.parametrize("cls", [ClassSpec.graph(), ClassSpec.tournament(), ClassSpec.partial_order()], ids=str)
def test_sap_holds_small(cls):
    assert check_property(cls, "SAP", 3).holds


def test_matching_ap_holds_small():
    # gluing the two new neighbours of r together rescues amalgamation
    assert check_property(ClassSpec.matching(), "AP", 3).holds


@pytest.mark.parametrize("cls", [ClassSpec.matching(), ClassSpec.graph(), ClassSpec.metric([1, 3])], ids=str)
def test_strong_implies_plain(cls):
    for x, y in extension_cospans(cls, 3):
        z = find_amalgam(x, y)
        if z is not None:
            assert induced(z, x.points) == x and induced(z, y.points) == y
            assert find_amalgam_with_identification(x, y) is not None


def test_gapped_distance_set_still_amalgamates():
    # K={1,3}: cross distances over one root point land in [0,2], [2,4] or [0,6],
    # and each interval meets K
    assert check_property(ClassSpec.metric([1, 3]), "SAP", 2).holds
    assert check_property(ClassSpec.metric([1, 3]), "RSP", 3).holds
