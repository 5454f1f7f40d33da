import pytest

from gkmtheta.fixtures import (
    FIXTURES,
    WEIGHTED_P2_SCALE,
    affine_chart,
    build,
    flag_s3,
    point,
    product_graph,
    projective_space,
    weighted_p2,
)
from gkmtheta.localization import space_euler
from gkmtheta.momentgraph import GraphError, betti, indegrees, validate


def test_projective_sizes():
    g = projective_space(1)
    assert len(g.vertices) == 2 and len(g.edges) == 1
    assert [indegrees(projective_space(4))[f"p{i}"] for i in range(5)] == [0, 1, 2, 3, 4]


def test_p2_space_euler():
    g = projective_space(2)
    assert space_euler(g, 3, "p1").value == g.polynomial("(a1 - a0)*(a1 - a2)")


def test_custom_weights_need_covector():
    with pytest.raises(ValueError):
        projective_space(1, [[1, 0], [0, 1]][::-1])


def test_affine_chart_rejects_bad_weight():
    with pytest.raises(GraphError):
        affine_chart([[1, 0], [0, -1]], [2, 1])


def test_product_vertices_and_vars():
    g = product_graph(projective_space(1), projective_space(1))
    assert g.vertices == ("p0,p0", "p0,p1", "p1,p0", "p1,p1")
    assert g.vars == ("a0_1", "a1_1", "a0_2", "a1_2")
    assert betti(g) == [1, 2, 1]
    assert validate(g).ok


def test_flag_edges():
    g = flag_s3()
    assert len(g.edges) == 9
    assert all(len(g.incident[v]) == 3 for v in g.vertices)
    with pytest.raises(GraphError):
        flag_s3((0, 1, 2))


def test_weighted_p2_content_two_at_singular_point():
    g = weighted_p2()
    contents = {(e.u, e.v): e.chi.content for e in g.edges}
    assert contents == {("p0", "p1"): 1, ("p0", "p2"): 2, ("p1", "p2"): 2}
    assert weighted_p2("consistent").scale_of("p2") == WEIGHTED_P2_SCALE["p2"]
    assert weighted_p2({"p2": 3}).scale_of("p2") == 3
    with pytest.raises(ValueError):
        weighted_p2("odd")


@pytest.mark.parametrize(
    "name, params, size",
    [
        ("point", [], 1),
        ("projective", ["3"], 4),
        ("flag3", [], 6),
        ("weighted_p2", ["consistent"], 3),
        ("product", ["projective:1", "projective:2"], 6),
    ],
)
def test_build(name, params, size):
    assert len(build(name, params).vertices) == size


def test_build_unknown():
    with pytest.raises(ValueError):
        build("torus")
    assert set(FIXTURES) >= {"point", "projective", "flag3", "weighted_p2", "product"}


def test_point():
    assert betti(point(2)) == [1]
