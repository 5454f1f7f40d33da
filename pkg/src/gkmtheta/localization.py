"""Equivariant Euler classes, the localization integral and local indices.

The Euler class of a vertex in an irreducible piece (the closure of one
cell) is ``scale(x) * prod(-w)`` over the tangent weights ``w`` at ``x`` of
the curves inside that closure.  A filtered piece ``X_i`` may be a union of
several cell closures; its fundamental class is the sum of theirs, so the
inverse Euler class of ``X_i`` at a vertex is the sum of the inverse Euler
classes of the components through it.  When ``X_i`` is smooth and
irreducible this is the usual product over all incident edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import LinearForm, Polynomial, RationalFunction, rational_sum
from .momentgraph import GraphError, MomentGraph, downset, piece_components
from .ppring import CohomologyClass


class NonPolynomialIndex(ArithmeticError):
    """A localization sum that must be a polynomial is not one.

    This means the Euler data are inconsistent: wrong scale factors, or a
    graph that does not come from a Q-filtrable variety.
    """

    def __init__(self, level: int, value: RationalFunction, vertex: str | None = None, names=None):
        self.level = level
        self.value = value
        self.vertex = vertex
        where = f"level {level}" + (f" (vertex {vertex!r})" if vertex is not None else "")
        super().__init__(f"local index at {where} is not a polynomial: {value.format(names)}")


@dataclass(frozen=True)
class EulerClass:
    value: Polynomial
    factors: tuple  # (LinearForm, multiplicity)
    scale: Fraction

    @classmethod
    def from_weights(cls, rank: int, weights, scale) -> "EulerClass":
        """``scale * prod(-w for w in weights)``."""
        scale = Fraction(scale)
        value = Polynomial.constant(rank, scale)
        counts: dict = {}
        for w in weights:
            f = -w
            value = value * f.to_polynomial()
            counts[f] = counts.get(f, 0) + 1
        return cls(value, tuple(counts.items()), scale)

    @property
    def degree(self) -> int:
        """Cohomological degree."""
        return 2 * sum(m for _, m in self.factors)

    def inverse(self) -> RationalFunction:
        return RationalFunction(Polynomial.constant(self.value.rank, 1 / self.scale), self.factors)


def _cache(g: MomentGraph, name: str) -> dict:
    return g.__dict__.setdefault(name, {})


def _check_vertex(g, v):
    if v not in g.position:
        raise GraphError(f"unknown vertex {v!r}")


def _check_level(g, level):
    m = len(g.vertices)
    if isinstance(level, bool) or not isinstance(level, int) or not 1 <= level <= m:
        raise GraphError(f"level must be an integer in 1..{m}, got {level!r}")


def cell_euler(g: MomentGraph, v: str) -> EulerClass:
    """Euler class of the cell of ``v`` at ``v``: scale times the negated in-edge weights."""
    _check_vertex(g, v)
    return EulerClass.from_weights(g.rank, [w for _, w in g.in_edges[v]], g.scale_of(v))


def component_euler(g: MomentGraph, top: str, v: str) -> EulerClass:
    """Euler class at ``v`` of the closure of the cell of ``top``."""
    cache = _cache(g, "_component_euler")
    key = (top, v)
    if key not in cache:
        _check_vertex(g, top)
        _check_vertex(g, v)
        closure = downset(g, top)
        if v not in closure:
            raise GraphError(f"vertex {v!r} is not in the closure of the cell of {top!r}")
        weights = [e.tangent_at(v) for e in g.incident[v] if e.other(v) in closure]
        cache[key] = EulerClass.from_weights(g.rank, weights, g.scale_of(v))
    return cache[key]


def components_through(g: MomentGraph, level: int, v: str) -> list:
    """Top vertices of the components of the piece at ``level`` that contain ``v``."""
    _check_level(g, level)
    _check_vertex(g, v)
    if g.level_of[v] > level:
        raise GraphError(f"vertex {v!r} is not in the piece at level {level}")
    return [k for k in piece_components(g, level) if v in downset(g, k)]


def space_euler(g: MomentGraph, level: int, v: str) -> EulerClass:
    """Euler class at ``v`` of the filtered piece at ``level``.

    Defined when ``v`` lies on a single component of the piece, where it is
    the product over the edges of the piece incident to ``v``.  At a point
    where several components meet the Euler class is not a product of
    linear forms; use :func:`inverse_euler` there.
    """
    comps = components_through(g, level, v)
    if len(comps) != 1:
        raise ValueError(
            f"vertex {v!r} lies on {len(comps)} components of the piece at level {level}; "
            "its Euler class is not a product of linear forms (use inverse_euler)"
        )
    return component_euler(g, comps[0], v)


def inverse_euler(g: MomentGraph, level: int, v: str) -> RationalFunction:
    """1 / Eu(v, X_level), summed over the components through ``v``."""
    cache = _cache(g, "_inverse_euler")
    key = (level, v)
    if key not in cache:
        comps = components_through(g, level, v)
        cache[key] = rational_sum(component_euler(g, k, v).inverse() for k in comps)
    return cache[key]


def integrate(c: CohomologyClass, level: int | None = None) -> RationalFunction:
    """Localization integral over the piece at ``level`` (default: the whole graph)."""
    g = c.graph
    if level is None:
        level = len(g.vertices)
    _check_level(g, level)
    terms = []
    for v in g.order[:level]:
        value = c[v]
        if value:
            terms.append(inverse_euler(g, level, v) * value)
    if not terms:
        return RationalFunction(Polynomial.zero(g.rank))
    return rational_sum(terms)


def local_index(c: CohomologyClass, level: int) -> Polynomial:
    """Integral of ``c`` over the ``level``-th filtered piece, as a polynomial.

    Raises:
        NonPolynomialIndex: the localization sum has a nontrivial denominator.
    """
    value = integrate(c, level)
    p = value.as_polynomial()
    if p is None:
        raise NonPolynomialIndex(level, value, c.graph.order[level - 1], c.graph.vars)
    return p


def local_index_at(c: CohomologyClass, vertex: str) -> Polynomial:
    """Local index at the piece whose top vertex is ``vertex``."""
    _check_vertex(c.graph, vertex)
    return local_index(c, c.graph.level_of[vertex])


def local_indices(c: CohomologyClass) -> list:
    """All local indices, in filtration order."""
    return [local_index(c, i) for i in range(1, len(c.graph.vertices) + 1)]
