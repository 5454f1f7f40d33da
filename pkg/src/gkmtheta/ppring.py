"""Classes in the piecewise polynomial ring of a moment graph.

A class is one polynomial per fixed point.  It is a genuine equivariant
cohomology class exactly when the values at the two ends of every edge are
congruent modulo the edge character.  Restriction to fixed points is
injective, which here is just the statement that a class *is* its tuple of
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exactpoly import Polynomial, reduce_mod_linear
from .momentgraph import GraphError, MomentGraph, subgraph


class GraphMismatch(ValueError):
    pass


class CohomologyClass:
    """Values of a class at the fixed points of ``graph``, in ``graph.vertices`` order."""

    __slots__ = ("graph", "_values")

    def __init__(self, graph: MomentGraph, values):
        if isinstance(values, Mapping):
            missing = [v for v in graph.vertices if v not in values]
            if missing:
                raise GraphError(f"class has no value at {', '.join(missing)}")
            extra = [v for v in values if v not in graph.position]
            if extra:
                raise GraphError(f"class has values at unknown vertices {', '.join(map(str, extra))}")
            values = [values[v] for v in graph.vertices]
        else:
            values = list(values)
            if len(values) != len(graph.vertices):
                raise GraphError(f"{len(values)} values for {len(graph.vertices)} vertices")
        clean = []
        for p in values:
            if isinstance(p, str):
                p = graph.polynomial(p)
            elif not isinstance(p, Polynomial):
                p = Polynomial.constant(graph.rank, p)
            if p.rank != graph.rank:
                raise GraphError(f"value {p} has rank {p.rank}, graph rank is {graph.rank}")
            clean.append(p)
        self.graph = graph
        self._values = tuple(clean)

    @classmethod
    def constant(cls, graph: MomentGraph, p=1) -> "CohomologyClass":
        if not isinstance(p, Polynomial):
            p = Polynomial.constant(graph.rank, p)
        return cls(graph, [p] * len(graph.vertices))

    @classmethod
    def zero(cls, graph: MomentGraph) -> "CohomologyClass":
        return cls.constant(graph, 0)

    @classmethod
    def supported_at(cls, graph: MomentGraph, vertex: str, value: Polynomial) -> "CohomologyClass":
        zero = Polynomial.zero(graph.rank)
        return cls(graph, {v: (value if v == vertex else zero) for v in graph.vertices})

    def __getitem__(self, v: str) -> Polynomial:
        try:
            return self._values[self.graph.position[v]]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    @property
    def values(self) -> dict:
        return dict(zip(self.graph.vertices, self._values))

    def in_order(self) -> list:
        """Values listed in filtration order."""
        return [self[v] for v in self.graph.order]

    def is_zero(self) -> bool:
        return not any(self._values)

    def _check(self, other):
        if self.graph is not other.graph and self.graph != other.graph:
            raise GraphMismatch("classes live on different graphs")

    def _lift(self, other):
        if isinstance(other, CohomologyClass):
            self._check(other)
            return other._values
        if isinstance(other, Polynomial):
            return (other,) * len(self._values)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return (Polynomial.constant(self.graph.rank, other),) * len(self._values)
        return None

    def __add__(self, other):
        vals = self._lift(other)
        if vals is None:
            return NotImplemented
        return CohomologyClass(self.graph, [a + b for a, b in zip(self._values, vals)])

    __radd__ = __add__

    def __neg__(self):
        return CohomologyClass(self.graph, [-a for a in self._values])

    def __sub__(self, other):
        vals = self._lift(other)
        if vals is None:
            return NotImplemented
        return CohomologyClass(self.graph, [a - b for a, b in zip(self._values, vals)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Pointwise product with a class, or the H_T-module action of a polynomial."""
        vals = self._lift(other)
        if vals is None:
            return NotImplemented
        return CohomologyClass(self.graph, [a * b for a, b in zip(self._values, vals)])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return (self.graph is other.graph or self.graph == other.graph) and self._values == other._values

    def __hash__(self):
        return hash(self._values)

    def format(self) -> dict:
        return {v: p.format(self.graph.vars) for v, p in zip(self.graph.vertices, self._values)}

    def __repr__(self):
        body = ", ".join(f"{v}: {t}" for v, t in self.format().items())
        return f"CohomologyClass({{{body}}})"


@dataclass
class GKMReport:
    ok: bool
    violations: list  # (edge index, edge)

    def __bool__(self):
        return self.ok

    def to_dict(self, names=None):
        return {
            "gkm": self.ok,
            "violations": [
                {"edge": k, "u": e.u, "v": e.v, "chi": list(e.chi.coeffs)} for k, e in self.violations
            ],
        }


def is_gkm(c: CohomologyClass) -> GKMReport:
    """Check ``c(u) = c(v) mod chi`` across every edge of the graph."""
    bad = []
    for k, e in enumerate(c.graph.edges):
        if reduce_mod_linear(c[e.u] - c[e.v], e.chi):
            bad.append((k, e))
    return GKMReport(not bad, bad)


def restrict(c: CohomologyClass, level: int) -> CohomologyClass:
    """Pull back to the filtered piece made of the first ``level`` vertices."""
    piece = subgraph(c.graph, level)
    if piece is c.graph:
        return c
    return CohomologyClass(piece, [c[v] for v in piece.vertices])


def homogeneous_degree(c: CohomologyClass) -> int | None:
    """Shared cohomological degree of all nonzero values, or None if there is none."""
    degs = set()
    for p in c._values:
        if p:
            if not p.is_homogeneous():
                return None
            degs.add(p.cohomological_degree())
    if len(degs) != 1:
        return None
    return degs.pop()


def is_homogeneous(c: CohomologyClass) -> bool:
    return c.is_zero() or homogeneous_degree(c) is not None
