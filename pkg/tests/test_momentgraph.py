import pytest

from gkmtheta.exactpoly import LinearForm, ProportionalModuli
from gkmtheta.fixtures import flag_s3, point, product_graph, projective_space
from gkmtheta.momentgraph import (
    CycleError,
    GraphError,
    MomentGraph,
    betti,
    cell_inedges,
    downset,
    filtration_order,
    indegrees,
    negated,
    outdegrees,
    piece_components,
    poincare,
    proportional_inedges,
    require_independent,
    subgraph,
    validate,
)


def p1():
    return MomentGraph(["p0", "p1"], [("p0", "p1", [-1, 1])], [1, 0], vars=["a0", "a1"])


def test_p1_valid():
    report = validate(p1())
    assert report.ok
    assert report.indegree == {"p0": 0, "p1": 1}


def test_non_generic_covector_names_edge():
    g = MomentGraph(["a", "b"], [("a", "b", [1, 0])], [0, 1])
    report = validate(g)
    assert not report.ok
    assert "generic" in report.errors[0]
    assert "a--b" in report.errors[0]


def test_two_cycle_reported():
    g = MomentGraph(["a", "b"], [("a", "b", [1, 0]), ("b", "a", [1, 0])], [1, 0])
    report = validate(g)
    assert not report.ok
    assert "cycle" in report.errors[0]
    with pytest.raises(CycleError):
        filtration_order(g)


def test_loop_rejected():
    g = MomentGraph(["a"], [("a", "a", [1, 0])], [1, 0])
    assert not validate(g).ok


def test_unknown_endpoint():
    with pytest.raises(GraphError):
        MomentGraph(["a"], [("a", "b", [1])], [1])


def test_duplicate_vertices():
    with pytest.raises(GraphError):
        MomentGraph(["a", "a"], [], [1])


def test_p2_order_by_heights():
    assert filtration_order(projective_space(2)) == ["p0", "p1", "p2"]


def test_no_edges_keeps_input_order():
    g = MomentGraph(["c", "a", "b"], [], [1, 2])
    assert filtration_order(g) == ["c", "a", "b"]


def test_reversed_input_still_topological():
    g = projective_space(3)
    r = g.with_vertex_order(list(reversed(g.vertices)))
    order = filtration_order(r)
    assert order == ["p0", "p1", "p2", "p3"]
    pos = {v: i for i, v in enumerate(order)}
    assert all(pos[t] < pos[h] for t, h, _ in r.directed)
    assert validate(r).notes


def test_stable_tie_breaking():
    # p1 and p2 are both minimal; input position decides
    g = MomentGraph(["p2", "p1", "top"], [("top", "p1", [1, 0]), ("top", "p2", [0, 1])], [1, 1])
    assert filtration_order(g) == ["p2", "p1", "top"]


def test_cell_inedges():
    g = projective_space(2)
    assert cell_inedges(g, "p0") == []
    top = cell_inedges(g, "p2")
    assert [(v, w.coeffs) for v, w in top] == [("p0", (1, 0, -1)), ("p1", (0, 1, -1))]
    assert cell_inedges(p1(), "p1") == [("p0", LinearForm([1, -1]))]


@pytest.mark.parametrize("n", range(0, 6))
def test_projective_betti(n):
    g = projective_space(n)
    assert betti(g) == [1] * (n + 1)
    assert len(cell_inedges(g, f"p{n}")) == n


def test_point_betti():
    assert betti(point()) == [1]


def test_flag_betti():
    g = flag_s3()
    assert betti(g) == [1, 2, 2, 1]
    assert indegrees(g) == {"123": 0, "132": 1, "213": 1, "231": 2, "312": 2, "321": 3}
    assert poincare(g).format(["t"]) == "t^6 + 2*t^4 + 2*t^2 + 1"


def test_product_poincare():
    a, b = projective_space(1), projective_space(2)
    assert poincare(product_graph(a, b)) == poincare(a) * poincare(b)


def test_subgraph():
    g = projective_space(2)
    assert subgraph(g, 3) is g
    one = subgraph(g, 1)
    assert one.vertices == ("p0",) and one.edges == ()
    two = subgraph(g, 2)
    assert two.vertices == ("p0", "p1")
    assert [(e.u, e.v) for e in two.edges] == [("p0", "p1")]


def test_negated_swaps_degrees():
    g = flag_s3()
    n = negated(g)
    assert indegrees(n) == outdegrees(g)
    assert outdegrees(n) == indegrees(g)


def test_downset_and_components():
    g = flag_s3()
    assert downset(g, "231") == frozenset({"123", "132", "213", "231"})
    assert piece_components(g, 5) == ["231", "312"]
    assert piece_components(g, 6) == ["321"]


def test_proportional_inedges_detected():
    g = MomentGraph(["a", "b", "c"], [("c", "a", [1, 0]), ("c", "b", [2, 0])], [1, 1])
    assert proportional_inedges(g)
    with pytest.raises(ProportionalModuli):
        require_independent(g)
    require_independent(projective_space(3))


def test_graph_is_hashable_value():
    assert projective_space(2) == projective_space(2)
    assert hash(projective_space(2)) == hash(projective_space(2))
