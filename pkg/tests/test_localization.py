from math import prod

import pytest

from gkmtheta.basisgen import theta_basis
from gkmtheta.exactpoly import Polynomial
from gkmtheta.fixtures import affine_chart, flag_s3, point, projective_space, weighted_p2
from gkmtheta.localization import (
    NonPolynomialIndex,
    cell_euler,
    components_through,
    integrate,
    inverse_euler,
    local_index,
    local_index_at,
    local_indices,
    space_euler,
)
from gkmtheta.ppring import CohomologyClass


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("n", range(1, 6))
def test_attractive_vertex_euler(n):
    g = affine_chart(_eye(n), list(range(n, 0, -1)))
    top = g.order[-1]
    x = [Polynomial.variable(n, i) for i in range(n)]
    assert cell_euler(g, top).value == prod(x, start=Polynomial.one(n)).scale((-1) ** n)


@pytest.mark.parametrize("n", range(1, 6))
def test_projective_space_euler(n):
    g = projective_space(n)
    a = [Polynomial.variable(n + 1, i) for i in range(n + 1)]
    for i in range(n + 1):
        expected = prod((a[i] - a[j] for j in range(n + 1) if j != i), start=Polynomial.one(n + 1))
        assert space_euler(g, n + 1, f"p{i}").value == expected


def test_cell_euler_examples():
    g = projective_space(2)
    assert cell_euler(g, "p0").value == Polynomial.one(3)
    assert cell_euler(g, "p2").value == g.polynomial("(a2 - a0)*(a2 - a1)")
    assert cell_euler(g, "p2").degree == 4
    assert space_euler(g, 2, "p0").value == g.polynomial("a0 - a1")
    assert space_euler(point(), 1, "p0").value == Polynomial.one(1)


def test_scale_multiplies_euler():
    g = weighted_p2("consistent")
    assert cell_euler(g, "p2").value == g.polynomial("2*t1*t2")
    assert cell_euler(weighted_p2(), "p2").value == g.polynomial("4*t1*t2")


def test_integrate_examples():
    g = projective_space(1)
    assert integrate(CohomologyClass.constant(g)).is_zero()
    assert integrate(CohomologyClass(g, ["0", "a1 - a0"])).as_polynomial() == Polynomial.one(2)
    p2 = projective_space(2)
    e = space_euler(p2, 3, "p1").value
    assert integrate(CohomologyClass.supported_at(p2, "p1", e)).as_polynomial() == Polynomial.one(3)


def test_degree_below_dimension_integrates_to_zero():
    g = projective_space(3)
    c = CohomologyClass(g, {v: g.polynomial(f"a{i}^2") for i, v in enumerate(g.vertices)})
    assert integrate(c).is_zero()


def test_local_index_of_vanishing_below():
    g = projective_space(2)
    c = CohomologyClass(g, {"p0": "0", "p1": "a1 - a0", "p2": "a2 - a0"})
    assert c["p1"] == local_index(c, 2) * space_euler(g, 2, "p1").value
    assert local_index(c, 2) == Polynomial.one(3)
    assert local_index_at(c, "p1") == Polynomial.one(3)
    assert local_indices(c) == [Polynomial.zero(3), Polynomial.one(3), Polynomial.zero(3)]


def test_reducible_piece_inverse_euler():
    # X_3 of the flag variety is two lines through the identity vertex
    g = flag_s3()
    assert components_through(g, 3, "123") == ["132", "213"]
    inv = inverse_euler(g, 3, "123")
    assert inv.format(g.vars) == "(x1 - x3)/((x2 - x3)*(x1 - x2))"
    with pytest.raises(ValueError):
        space_euler(g, 3, "123")
    assert local_index(CohomologyClass.constant(g), 3).is_zero()


def test_flag_theta_index_matrix():
    g = flag_s3()
    basis = theta_basis(g)
    for i, theta in enumerate(basis):
        assert local_indices(theta) == [Polynomial.constant(3, int(i == k)) for k in range(6)]


def test_weighted_default_scale_diagnostic():
    g = weighted_p2()
    c = CohomologyClass.constant(g)
    with pytest.raises(NonPolynomialIndex) as info:
        local_index(c, 3)
    assert info.value.level == 3
    assert info.value.vertex == "p2"
    assert info.value.value.format(g.vars) == "(-1/4)/((t2)*(t1))"


def test_weighted_consistent_scale_is_polynomial():
    g = weighted_p2("consistent")
    assert local_index(CohomologyClass.constant(g), 3).is_zero()
