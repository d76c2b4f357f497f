import json

import pytest

from lamanbounds import data
from lamanbounds.analysis import planarity
from lamanbounds.families import in_S, in_T, search_family, verify_report
from lamanbounds.graph import complete_graph, cycle_graph, decode, three_prism


def test_listed_member_of_T():
    g = decode(data.FAMILY_T[12][0], 12)
    rep = in_T(g)
    assert rep and rep.reason == ""
    assert rep.evidence["triangles"] == 2 and rep.evidence["four_cycles"] == 9
    assert verify_report(g, rep)


def test_maximal_12_vertex_graph_is_not_in_T():
    rep = in_T(decode(data.MAX_2D[12][0], 12))
    assert not rep and rep.reason
    assert rep.evidence["triangles"] == 0


def test_prism_satisfies_every_T_condition():
    # planar, cubic, two disjoint triangles, three quadrilaterals = n - 3
    rep = in_T(three_prism())
    assert rep.verdict
    assert rep.evidence["four_cycles"] == 3


def test_non_laman_input_is_rejected():
    with pytest.raises(ValueError):
        in_T(complete_graph(4))
    with pytest.raises(ValueError):
        in_S(cycle_graph(5))


@pytest.mark.parametrize("n", range(6, 13))
def test_maximal_graphs_are_symmetric(n):
    g = decode(data.MAX_2D[n][0], n)
    rep = in_S(g)
    assert rep, rep.reason
    assert verify_report(g, rep)
    assert json.loads(rep.to_json())["verdict"] is True


def test_odd_reflection_evidence():
    g = decode(data.MAX_2D[7][0], 7)
    rep = in_S(g)
    assert rep.evidence["symmetry"] == "reflection"
    k = rep.evidence["parameter"]
    assert (2 * rep.evidence["axis_vertex_position"]) % 7 == k % 7


def test_search_family_small():
    members = search_family(6, "S", count=True)
    assert any(r.code.code == 7916 or r.count == 24 for r in members)
    counts = [r.count for r in members]
    assert counts == sorted(counts, reverse=True)
    t6 = search_family(6, "T")
    assert all(planarity(r.code.graph()).planar for r in t6)
    with pytest.raises(ValueError):
        search_family(11, "T")
