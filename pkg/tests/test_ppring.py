import random

import pytest

from gkmtheta.exactpoly import Polynomial
from gkmtheta.fixtures import flag_s3, projective_space
from gkmtheta.momentgraph import GraphError, subgraph
from gkmtheta.ppring import (
    CohomologyClass,
    GraphMismatch,
    homogeneous_degree,
    is_gkm,
    is_homogeneous,
    restrict,
)


@pytest.fixture
def p1():
    return projective_space(1)


def test_constant_passes(p1):
    assert is_gkm(CohomologyClass.constant(p1, Polynomial.variable(2, 0)))


def test_p1_theta_passes(p1):
    assert is_gkm(CohomologyClass(p1, {"p0": "0", "p1": "a1 - a0"}))


def test_p1_jump_fails_on_edge(p1):
    report = is_gkm(CohomologyClass(p1, ["0", "1"]))
    assert not report
    assert [k for k, _ in report.violations] == [0]
    assert report.to_dict()["violations"][0]["u"] == "p0"


def test_missing_value_rejected(p1):
    with pytest.raises(GraphError):
        CohomologyClass(p1, {"p0": "1"})


def test_arithmetic(p1):
    c = CohomologyClass(p1, {"p0": "0", "p1": "a1 - a0"})
    assert (c + (-1) * c).is_zero()
    assert (c * c)["p1"] == p1.polynomial("(a1 - a0)^2")
    assert (c * p1.polynomial("a0"))["p1"] == p1.polynomial("a0*a1 - a0^2")
    assert (c + 1)["p0"] == Polynomial.one(2)
    assert (c - c).is_zero()


def test_graph_mismatch():
    a = CohomologyClass.constant(projective_space(1))
    b = CohomologyClass.constant(projective_space(2))
    with pytest.raises(GraphMismatch):
        a + b


def test_restrict():
    g = projective_space(2)
    theta1 = CohomologyClass(g, {"p0": "0", "p1": "a1 - a0", "p2": "a2 - a0"})
    r = restrict(theta1, 2)
    assert r.graph == subgraph(g, 2)
    assert r.format() == {"p0": "0", "p1": "-a0 + a1"}
    assert restrict(CohomologyClass.constant(g, 3), 1).format() == {"p0": "3"}


def test_products_of_gkm_are_gkm():
    g = flag_s3()
    rng = random.Random(7)
    x = [Polynomial.variable(3, i) for i in range(3)]
    a = CohomologyClass(g, {w: x[int(w[0]) - 1] for w in g.vertices})
    b = CohomologyClass(g, {w: x[int(w[2]) - 1] * x[int(w[1]) - 1] for w in g.vertices})
    assert is_gkm(a) and is_gkm(b)
    for _ in range(10):
        k = Polynomial.constant(3, rng.randint(-3, 3))
        assert is_gkm(a * b + b * k)


def test_homogeneous_degree():
    g = projective_space(1)
    assert homogeneous_degree(CohomologyClass(g, ["0", "a1 - a0"])) == 2
    assert not is_homogeneous(CohomologyClass(g, ["1", "a1"]))
    assert homogeneous_degree(CohomologyClass.zero(g)) is None
