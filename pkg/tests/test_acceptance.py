"""Acceptance criteria, checked in exact arithmetic.

Each test prints one ``PASS``/``FAIL`` line naming its criterion.  Run
``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import random
from math import prod

import pytest

from gkmtheta.basisgen import expand, flowup_basis, solve_triangular, structure_constants, theta_basis
from gkmtheta.exactpoly import Polynomial
from gkmtheta.fixtures import (
    affine_chart,
    flag_s3,
    point,
    product_graph,
    projective_space,
    weighted_p2,
)
from gkmtheta.localization import cell_euler, integrate, local_index, space_euler
from gkmtheta.momentgraph import betti, filtration_order, indegrees, negated, outdegrees, poincare
from gkmtheta.ppring import CohomologyClass, is_gkm


def smooth():
    return {
        "P1": projective_space(1),
        "P2": projective_space(2),
        "P3": projective_space(3),
        "flag3": flag_s3(),
        "P1xP1": product_graph(projective_space(1), projective_space(1)),
    }


def every_fixture():
    out = {"point": point(), "P0": projective_space(0), **smooth()}
    out["P4"] = projective_space(4)
    out["P1xP2"] = product_graph(projective_space(1), projective_space(2))
    out["wp2"] = weighted_p2()
    out["wp2c"] = weighted_p2("consistent")
    return out


def random_poly(rng, rank, max_degree=2, terms=3):
    t = {}
    for _ in range(rng.randint(0, terms)):
        d = rng.randint(0, max_degree)
        mono = [0] * rank
        for _ in range(d):
            mono[rng.randrange(rank)] += 1
        t[tuple(mono)] = rng.randint(-3, 3)
    return Polynomial(rank, t)


def one(rank):
    return Polynomial.one(rank)


# -- criteria -----------------------------------------------------------------


def crit_euler_examples():
    for n in range(1, 6):
        # symbolic weights: alpha_i is the i-th coordinate character
        g = affine_chart([[int(i == j) for j in range(n)] for i in range(n)], list(range(n, 0, -1)))
        x = [Polynomial.variable(n, i) for i in range(n)]
        if cell_euler(g, g.order[-1]).value != prod(x, start=one(n)).scale((-1) ** n):
            return False, f"affine chart n={n}"
        p = projective_space(n)
        a = [Polynomial.variable(n + 1, i) for i in range(n + 1)]
        for i in range(n + 1):
            want = prod((a[i] - a[j] for j in range(n + 1) if j != i), start=one(n + 1))
            if space_euler(p, n + 1, f"p{i}").value != want:
                return False, f"P^{n} vertex {i}"
    return True, "n = 1..5"


def crit_betti():
    for n in range(0, 6):
        if betti(projective_space(n)) != [1] * (n + 1):
            return False, f"P^{n}"
    if betti(flag_s3()) != [1, 2, 2, 1]:
        return False, "flag3"
    pieces = [projective_space(1), projective_space(2), flag_s3()]
    for a in pieces:
        for b in pieces[:2]:
            if poincare(product_graph(a, b)) != poincare(a) * poincare(b):
                return False, "product Poincare polynomial"
    for name, g in every_fixture().items():
        if sum(betti(g)) != len(g.vertices):
            return False, f"Euler characteristic of {name}"
    return True, "P^0..P^5, flag3, products"


def crit_membership(trials=100):
    rng = random.Random(2024)
    fixtures = {**smooth(), "wp2c": weighted_p2("consistent")}
    for name, g in fixtures.items():
        basis = theta_basis(g)
        if not is_gkm(CohomologyClass.constant(g, random_poly(rng, g.rank))):
            return False, f"constant class on {name}"
        for _ in range(trials):
            c = basis.combine([random_poly(rng, g.rank) for _ in basis])
            if not is_gkm(c):
                return False, f"combination on {name}"
            v = rng.choice([w for w in g.vertices if g.incident[w]])
            values = dict(c.values)
            values[v] = values[v] + 1
            if is_gkm(CohomologyClass(g, values)):
                return False, f"perturbation at {v} on {name}"
    return True, f"{trials} trials on {len(fixtures)} fixtures"


def crit_theta_properties():
    graphs = {f"P{n}": projective_space(n) for n in range(1, 5)}
    graphs["flag3"] = flag_s3()
    for name, g in graphs.items():
        basis = theta_basis(g)
        order = g.order
        for i, theta in enumerate(basis):
            for j in range(len(order)):
                if local_index(theta, j + 1) != Polynomial.constant(g.rank, int(i == j)):
                    return False, f"I_{j + 1}(theta_{i + 1}) on {name}"
                if j < i and theta[order[j]]:
                    return False, f"theta_{i + 1} at vertex {j + 1} on {name}"
            if theta[order[i]] != cell_euler(g, order[i]).value:
                return False, f"diagonal {i + 1} on {name}"
    return True, "P^1..P^4, flag3"


def crit_uniqueness():
    for name, g in {**smooth(), "wp2c": weighted_p2("consistent")}.items():
        if theta_basis(g, "forward").dumps() != theta_basis(g, "reverse").dumps():
            return False, name
    return True, "forward and reverse residue order"


def crit_flowup_consistency():
    for name, g in {**smooth(), "wp2c": weighted_p2("consistent")}.items():
        for crt_order in ("forward", "reverse"):
            flow = flowup_basis(g, crt_order)
            for i, phi in enumerate(flow, start=1):
                top = g.order[i - 1]
                implied = local_index(phi, i) * space_euler(g, i, top).value
                if phi[top] != implied:
                    return False, f"phi_{i} at its own level on {name}"
                # local_index raises unless the index is a polynomial
                for k in range(i, len(g) + 1):
                    local_index(phi, k)
    return True, "all flow-up classes, both residue orders"


def crit_polynomiality(trials=100):
    rng = random.Random(99)
    for name, g in smooth().items():
        basis = theta_basis(g)
        n = len(basis)
        for _ in range(trials):
            i, j = rng.randrange(n), rng.randrange(n)
            c = basis[i] * basis[j] * random_poly(rng, g.rank)
            if integrate(c).as_polynomial() is None:
                return False, f"theta_{i} theta_{j} on {name}"
    return True, f"{trials} products on each of {len(smooth())} fixtures"


def crit_freeness(trials=100):
    rng = random.Random(7)
    for name, g in {**smooth(), "wp2c": weighted_p2("consistent")}.items():
        basis = theta_basis(g)
        for _ in range(trials):
            coeffs = [random_poly(rng, g.rank) for _ in basis]
            c = basis.combine(coeffs)
            if expand(c, basis) != coeffs or basis.combine(expand(c, basis)) != c:
                return False, f"round trip on {name}"
        n = len(basis)
        order = g.order
        for i in range(n):
            for j in range(i, n):
                cij = structure_constants(basis, i, j)
                if cij != structure_constants(basis, j, i):
                    return False, f"symmetry ({i}, {j}) on {name}"
                if any(cij[order[k]] for k in range(max(i, j))):
                    return False, f"c_{i}{j}^k below max(i, j) on {name}"
                oracle = solve_triangular(basis[i] * basis[j], basis)
                if [cij[v] for v in order] != oracle:
                    return False, f"oracle disagreement ({i}, {j}) on {name}"
    g = projective_space(1)
    c = structure_constants(theta_basis(g), 1, 1)
    oracle = solve_triangular(theta_basis(g)[1] * theta_basis(g)[1], theta_basis(g))
    if c["p1"] != g.polynomial("a1 - a0") or c["p0"] or oracle != [c["p0"], c["p1"]]:
        return False, "P^1 constants"
    return True, f"{trials} combinations per fixture, all structure constants"


def crit_orientation():
    for name, g in every_fixture().items():
        pos = {v: k for k, v in enumerate(filtration_order(g))}
        if any(pos[tail] >= pos[head] for tail, head, _ in g.directed):
            return False, f"edge order on {name}"
        n = negated(g)
        if indegrees(n) != outdegrees(g) or outdegrees(n) != indegrees(g):
            return False, f"negated covector on {name}"
    return True, f"{len(every_fixture())} fixtures"


CRITERIA = [
    ("1 Euler classes of affine charts and projective spaces", crit_euler_examples),
    ("2 Betti numbers from in-degrees", crit_betti),
    ("3 GKM membership of classes and perturbations", crit_membership),
    ("4 theta basis: unit indices, vanishing below, Euler diagonal", crit_theta_properties),
    ("5 theta export independent of residue order", crit_uniqueness),
    ("6 flow-up values agree with their local indices", crit_flowup_consistency),
    ("7 integrals of products of theta classes are polynomial", crit_polynomiality),
    ("8 freeness round trip and structure constants", crit_freeness),
    ("9 orientation and filtration order", crit_orientation),
]


def _report(label, check):
    try:
        ok, detail = check()
    except Exception as exc:  # a crash is a failure of the criterion
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return ok, f"{'PASS' if ok else 'FAIL'}  criterion {label}  ({detail})"


@pytest.mark.parametrize("label, check", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(label, check, capsys):
    ok, line = _report(label, check)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_report(label, check) for label, check in CRITERIA]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
