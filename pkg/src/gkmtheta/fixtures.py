"""Built-in moment graphs with known answers."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .momentgraph import GraphError, MomentGraph, validate


def _unit(rank, i):
    v = [0] * rank
    v[i] = 1
    return v


def point(rank: int = 1) -> MomentGraph:
    return MomentGraph(["p0"], [], [1] * rank)


def projective_space(
    n: int,
    weights: Sequence[Sequence[int]] | None = None,
    covector: Sequence[int] | None = None,
) -> MomentGraph:
    """P^n with torus weights ``alpha_0..alpha_n`` (default: the coordinate characters).

    Vertex ``p_i`` is the coordinate line of ``alpha_i``; the curve joining
    ``p_i`` and ``p_j`` has tangent weight ``alpha_j - alpha_i`` at ``p_i``.
    The default covector makes ``p_0, ..., p_n`` the filtration order, so
    ``p_i`` has in-degree ``i``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if weights is None:
        weights = [_unit(n + 1, i) for i in range(n + 1)]
    weights = [list(w) for w in weights]
    if len(weights) != n + 1:
        raise ValueError(f"P^{n} needs {n + 1} weights")
    rank = len(weights[0])
    if covector is None:
        if weights == [_unit(n + 1, i) for i in range(n + 1)]:
            covector = [n - i for i in range(n + 1)]
        else:
            raise ValueError("custom weights need an explicit covector")
    edges = []
    for i, j in combinations(range(n + 1), 2):
        chi = [b - a for a, b in zip(weights[i], weights[j])]
        edges.append((f"p{i}", f"p{j}", chi))
    g = MomentGraph([f"p{i}" for i in range(n + 1)], edges, covector,
                    vars=[f"a{i}" for i in range(rank)] if rank == n + 1 else None)
    validate(g).raise_if_invalid()
    return g


def affine_chart(weights: Sequence[Sequence[int]], covector: Sequence[int]) -> MomentGraph:
    """Projective completion of C^n with the given weights, attractive point on top.

    The chart's origin is the last vertex; its tangent weights are exactly
    ``weights``, which must all pair positively with ``covector``.
    """
    weights = [list(w) for w in weights]
    n = len(weights)
    rank = len(covector)
    for w in weights:
        if sum(a * b for a, b in zip(w, covector)) <= 0:
            raise GraphError(f"weight {w} does not pair positively with the covector")
    return projective_space(n, weights + [[0] * rank], covector)


def product_graph(g1: MomentGraph, g2: MomentGraph) -> MomentGraph:
    """Moment graph of a product: edges are edge x vertex and vertex x edge."""
    r1, r2 = g1.rank, g2.rank
    names = list(g1.vars) + list(g2.vars)
    if len(set(names)) != len(names):
        names = [f"{n}_1" for n in g1.vars] + [f"{n}_2" for n in g2.vars]

    def vid(a, b):
        return f"{a},{b}"

    vertices = [vid(a, b) for a in g1.vertices for b in g2.vertices]
    edges = []
    for e in g1.edges:
        chi = list(e.chi.coeffs) + [0] * r2
        for b in g2.vertices:
            edges.append((vid(e.u, b), vid(e.v, b), chi))
    for a in g1.vertices:
        for e in g2.edges:
            chi = [0] * r1 + list(e.chi.coeffs)
            edges.append((vid(a, e.u), vid(a, e.v), chi))
    scale = {}
    for a in g1.vertices:
        for b in g2.vertices:
            s = g1.scale_of(a) * g2.scale_of(b)
            if s != 1:
                scale[vid(a, b)] = s
    return MomentGraph(vertices, edges, list(g1.covector) + list(g2.covector), names, scale)


def flag_s3(covector: Sequence[int] = (2, 1, 0)) -> MomentGraph:
    """Full flags in C^3: vertices are permutations in one-line notation.

    The curve from ``w`` swapping positions ``a < b`` has tangent weight
    ``x_{w(b)} - x_{w(a)}`` at ``w``.  With a strictly decreasing covector
    the in-degree of ``w`` is its number of inversions.
    """
    covector = list(covector)
    if not covector[0] > covector[1] > covector[2]:
        raise GraphError("flag_s3 needs a strictly dominant (decreasing) covector")
    perms = sorted(permutations((1, 2, 3)), key=lambda w: (_inversions(w), w))
    name = {w: "".join(map(str, w)) for w in perms}
    edges = []
    for w in perms:
        for a, b in combinations(range(3), 2):
            u = list(w)
            u[a], u[b] = u[b], u[a]
            u = tuple(u)
            if name[w] < name[u]:
                chi = [0, 0, 0]
                chi[w[b] - 1] += 1
                chi[w[a] - 1] -= 1
                edges.append((name[w], name[u], chi))
    g = MomentGraph([name[w] for w in perms], edges, covector, vars=["x1", "x2", "x3"])
    validate(g).raise_if_invalid()
    return g


def _inversions(w) -> int:
    return sum(1 for a, b in combinations(range(len(w)), 2) if w[a] > w[b])


WEIGHTED_P2_SCALE = {"p2": Fraction(1, 2)}


def weighted_p2(scale: str | dict | None = "default") -> MomentGraph:
    """The weighted projective plane P(1,1,2), singular at ``p2``.

    Coordinates ``z0, z1`` of degree 1 and ``z2`` of degree 2, torus
    characters ``(1,0), (0,1), (0,0)``.  The chart at ``p2`` is ``C^2/{+-1}``
    and its curve characters are twice the orbifold tangent weights, so
    both edges at ``p2`` have content 2.  ``scale="consistent"`` applies
    the factor 1/2 at ``p2`` that makes localization exact;
    ``scale="default"`` keeps every factor at 1.
    """
    if scale == "default" or scale is None:
        scale = {}
    elif scale == "consistent":
        scale = dict(WEIGHTED_P2_SCALE)
    elif not isinstance(scale, dict):
        raise ValueError("scale must be 'default', 'consistent' or a mapping")
    alpha = [(1, 0), (0, 1), (0, 0)]
    degree = [1, 1, 2]

    def chi(i, j):
        # tangent weight at p_i towards p_j
        return [degree[i] * b - degree[j] * a for a, b in zip(alpha[i], alpha[j])]

    edges = [("p0", "p1", chi(0, 1)), ("p0", "p2", chi(0, 2)), ("p1", "p2", chi(1, 2))]
    g = MomentGraph(["p0", "p1", "p2"], edges, [2, 1], vars=["t1", "t2"], scale=scale)
    validate(g).raise_if_invalid()
    return g


FIXTURES = {
    "point": "single fixed point",
    "projective": "projective space P^n: example projective N",
    "flag3": "full flag variety of C^3",
    "weighted_p2": "weighted projective plane P(1,1,2): example weighted_p2 [default|consistent]",
    "product": "product of fixtures: example product NAME[:PARAM] NAME[:PARAM]",
}


def build(name: str, params: Sequence[str] = ()) -> MomentGraph:
    """Construct a named fixture from string parameters (used by the CLI)."""
    params = list(params)
    if name == "point":
        return point()
    if name == "projective":
        n = int(params[0]) if params else 1
        return projective_space(n)
    if name in ("flag3", "flag_s3"):
        return flag_s3()
    if name == "weighted_p2":
        return weighted_p2(params[0] if params else "default")
    if name == "product":
        if len(params) != 2:
            raise ValueError("product needs two fixture descriptions such as projective:1")
        parts = []
        for item in params:
            sub, _, arg = item.partition(":")
            parts.append(build(sub, [arg] if arg else []))
        return product_graph(*parts)
    raise ValueError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
