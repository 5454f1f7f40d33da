"""Moment graphs: fixed points, invariant curves and a generic covector.

An edge ``(u, v, chi)`` is a T-invariant curve joining two fixed points;
its tangent weight is ``chi`` at ``u`` and ``-chi`` at ``v``.  The covector
orients every edge towards the endpoint whose tangent weight pairs
positively with it, so in-edges at a vertex are the curves lying in that
vertex's cell and their number is the cell dimension.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .exactpoly import LinearForm, Polynomial, ProportionalModuli


class GraphError(ValueError):
    """Structural or semantic problem with a moment graph."""


class CycleError(GraphError):
    def __init__(self, vertices):
        self.vertices = list(vertices)
        super().__init__(f"orientation has a directed cycle through {', '.join(self.vertices)}")


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    chi: LinearForm

    def tangent_at(self, x: str) -> LinearForm:
        if x == self.u:
            return self.chi
        if x == self.v:
            return -self.chi
        raise GraphError(f"vertex {x!r} is not an endpoint of {self}")

    def other(self, x: str) -> str:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise GraphError(f"vertex {x!r} is not an endpoint of {self}")

    def __str__(self):
        return f"{self.u}--{self.v} [{', '.join(map(str, self.chi.coeffs))}]"


def _as_edge(e) -> Edge:
    if isinstance(e, Edge):
        return e
    if isinstance(e, Mapping):
        u, v, chi = e["u"], e["v"], e["chi"]
    else:
        u, v, chi = e
    if not isinstance(chi, LinearForm):
        chi = LinearForm(chi)
    return Edge(str(u), str(v), chi)


@dataclass(frozen=True)
class MomentGraph:
    """Combinatorial shadow of a T-skeletal variety.

    ``vertices`` is the preferred order used to break ties in the filtration
    order; it need not itself be a filtration order.  ``scale`` assigns each
    vertex the positive rational normalizing its Euler classes (default 1).
    """

    rank: int
    vars: tuple
    vertices: tuple
    edges: tuple
    covector: tuple
    scale: tuple = field(default=())

    def __init__(
        self,
        vertices: Sequence[str],
        edges: Iterable,
        covector: Sequence[int],
        vars: Sequence[str] | None = None,
        scale: Mapping[str, object] | None = None,
        rank: int | None = None,
    ):
        vertices = tuple(str(v) for v in vertices)
        covector = tuple(covector)
        rank = len(covector) if rank is None else rank
        if rank < 1:
            raise GraphError("rank must be positive")
        if vars is None:
            vars = tuple(f"x{i + 1}" for i in range(rank))
        vars = tuple(vars)
        if len(vars) != rank:
            raise GraphError(f"{len(vars)} variable names for rank {rank}")
        if len(set(vars)) != len(vars):
            raise GraphError("variable names must be distinct")
        if len(covector) != rank:
            raise GraphError(f"covector has length {len(covector)}, rank is {rank}")
        for c in covector:
            if isinstance(c, bool) or not isinstance(c, int):
                raise GraphError(f"covector entries must be integers, got {c!r}")
        if len(set(vertices)) != len(vertices):
            raise GraphError("vertex ids must be unique")
        known = set(vertices)
        clean_edges = []
        for k, e in enumerate(edges):
            try:
                e = _as_edge(e)
            except (TypeError, ValueError, KeyError) as exc:
                raise GraphError(f"edge {k}: {exc}") from exc
            if e.u not in known or e.v not in known:
                raise GraphError(f"edge {k} ({e}) has an unknown endpoint")
            if e.chi.rank != rank:
                raise GraphError(f"edge {k} ({e}) character has length {e.chi.rank}, rank is {rank}")
            clean_edges.append(e)
        factors = {}
        for v, s in (scale or {}).items():
            v = str(v)
            if v not in known:
                raise GraphError(f"scale given for unknown vertex {v!r}")
            s = Fraction(s)
            if s <= 0:
                raise GraphError(f"scale factor for {v!r} must be positive")
            if s != 1:
                factors[v] = s
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(clean_edges))
        object.__setattr__(self, "covector", covector)
        object.__setattr__(self, "scale", tuple((v, factors[v]) for v in vertices if v in factors))

    # -- basic lookups --------------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    def scale_of(self, v: str) -> Fraction:
        return self._scale_map.get(v, Fraction(1))

    @cached_property
    def _scale_map(self):
        return dict(self.scale)

    @cached_property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def incident(self) -> dict:
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.u].append(e)
            if e.v != e.u:
                out[e.v].append(e)
        return out

    def pairing(self, e: Edge) -> int:
        return e.chi.pairing(self.covector)

    @cached_property
    def directed(self) -> tuple:
        """(tail, head, edge) for every edge; raises on a non-generic covector."""
        out = []
        for e in self.edges:
            s = self.pairing(e)
            if s == 0:
                raise GraphError(f"covector is not generic: it pairs to zero with edge {e}")
            out.append((e.v, e.u, e) if s > 0 else (e.u, e.v, e))
        return tuple(out)

    @cached_property
    def order(self) -> tuple:
        return tuple(filtration_order(self))

    @cached_property
    def level_of(self) -> dict:
        """1-based filtration level of each vertex."""
        return {v: i + 1 for i, v in enumerate(self.order)}

    @cached_property
    def in_edges(self) -> dict:
        out = {v: [] for v in self.vertices}
        for tail, head, e in self.directed:
            out[head].append((tail, e.tangent_at(head)))
        return out

    @cached_property
    def out_edges(self) -> dict:
        out = {v: [] for v in self.vertices}
        for tail, head, e in self.directed:
            out[tail].append((head, e.tangent_at(tail)))
        return out

    def names(self) -> tuple:
        return self.vars

    def polynomial(self, text: str) -> Polynomial:
        from .parse import parse_polynomial

        return parse_polynomial(text, self.vars)

    @cached_property
    def _subgraphs(self) -> dict:
        return {}

    @cached_property
    def _downsets(self) -> dict:
        return {}

    def with_covector(self, covector: Sequence[int]) -> "MomentGraph":
        return MomentGraph(self.vertices, self.edges, covector, self.vars, dict(self.scale))

    def with_scale(self, scale: Mapping[str, object]) -> "MomentGraph":
        return MomentGraph(self.vertices, self.edges, self.covector, self.vars, scale)

    def with_vertex_order(self, vertices: Sequence[str]) -> "MomentGraph":
        if sorted(vertices) != sorted(self.vertices):
            raise GraphError("new vertex order must be a permutation of the vertices")
        return MomentGraph(vertices, self.edges, self.covector, self.vars, dict(self.scale))


@dataclass
class ValidationReport:
    ok: bool
    errors: list
    notes: list
    indegree: dict

    def raise_if_invalid(self):
        if not self.ok:
            raise GraphError("; ".join(self.errors))

    def to_dict(self):
        return {"valid": self.ok, "errors": list(self.errors), "notes": list(self.notes),
                "indegree": dict(self.indegree)}


def validate(g: MomentGraph) -> ValidationReport:
    """Check the combinatorial axioms we rely on.

    Errors: loops, a covector pairing to zero with some edge, and directed
    cycles.  Notes (non-fatal): the input vertex order is not itself a
    filtration order, and proportional in-edge characters at a vertex
    (fatal later, for basis construction only).
    """
    errors, notes = [], []
    for k, e in enumerate(g.edges):
        if e.u == e.v:
            errors.append(f"edge {k} ({e}) is a loop at {e.u!r}")
    for k, e in enumerate(g.edges):
        if g.pairing(e) == 0:
            errors.append(f"covector is not generic: it pairs to zero with edge {k} ({e})")
    if errors:
        return ValidationReport(False, errors, notes, {})
    try:
        order = g.order
    except CycleError as exc:
        return ValidationReport(False, [str(exc)], notes, {})
    pos = {v: i for i, v in enumerate(g.vertices)}
    for tail, head, e in g.directed:
        if pos[tail] > pos[head]:
            notes.append("input vertex order is not a filtration order; filtration order is "
                         + " ".join(order))
            break
    for v, a, b in proportional_inedges(g):
        notes.append(f"in-edges at {v!r} have proportional characters ({a} and {b}); "
                     "basis construction will be rejected")
    indeg = {v: len(g.in_edges[v]) for v in order}
    return ValidationReport(True, errors, notes, indeg)


def filtration_order(g: MomentGraph) -> list:
    """Topological order of the oriented graph, ties broken by input position.

    Raises:
        CycleError: the orientation is not acyclic.
    """
    indeg = {v: 0 for v in g.vertices}
    succ = {v: [] for v in g.vertices}
    for tail, head, _ in g.directed:
        if tail == head:
            raise CycleError([tail])
        succ[tail].append(head)
        indeg[head] += 1
    pos = g.position
    heap = [pos[v] for v in g.vertices if indeg[v] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        v = g.vertices[heapq.heappop(heap)]
        out.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, pos[w])
    if len(out) != len(g.vertices):
        raise CycleError(v for v in g.vertices if indeg[v] > 0)
    return out


def cell_inedges(g: MomentGraph, v: str) -> list:
    """In-edges at ``v`` as (neighbor, tangent weight at v); each weight pairs positively."""
    if v not in g.position:
        raise GraphError(f"unknown vertex {v!r}")
    return list(g.in_edges[v])


def indegrees(g: MomentGraph) -> dict:
    return {v: len(g.in_edges[v]) for v in g.order}


def outdegrees(g: MomentGraph) -> dict:
    return {v: len(g.out_edges[v]) for v in g.order}


def betti(g: MomentGraph) -> list:
    """Even Betti numbers: entry k is b_{2k}, the number of k-dimensional cells."""
    degs = [len(g.in_edges[v]) for v in g.vertices]
    if not degs:
        return []
    b = [0] * (max(degs) + 1)
    for d in degs:
        b[d] += 1
    return b


def poincare(g: MomentGraph) -> Polynomial:
    """Poincare polynomial sum_k b_{2k} t^{2k} as a one-variable Polynomial."""
    return Polynomial(1, {(2 * k,): b for k, b in enumerate(betti(g)) if b})


def subgraph(g: MomentGraph, level: int) -> MomentGraph:
    """The filtered piece spanned by the first ``level`` vertices of the filtration order."""
    m = len(g.vertices)
    if not 1 <= level <= m:
        raise GraphError(f"level must be in 1..{m}, got {level}")
    if level == m:
        return g
    cache = g._subgraphs
    if level not in cache:
        keep = g.order[:level]
        kept = set(keep)
        edges = [e for e in g.edges if e.u in kept and e.v in kept]
        scale = {v: s for v, s in g.scale if v in kept}
        cache[level] = MomentGraph(keep, edges, g.covector, g.vars, scale)
    return cache[level]


def downset(g: MomentGraph, v: str) -> frozenset:
    """Vertices with a directed path to ``v`` (including ``v``): the cell closure's fixed points."""
    cache = g._downsets
    if v not in cache:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for tail, _ in g.in_edges[x]:
                if tail not in seen:
                    seen.add(tail)
                    stack.append(tail)
        cache[v] = frozenset(seen)
    return cache[v]


def piece_components(g: MomentGraph, level: int) -> list:
    """Top vertices of the irreducible components of the filtered piece at ``level``.

    A component is the closure of a cell that is not in the closure of any
    other cell of the piece, i.e. a vertex of the piece with no out-edge
    inside it.
    """
    keep = g.order[:level]
    kept = set(keep)
    return [v for v in keep if not any(h in kept for h, _ in g.out_edges[v])]


def proportional_inedges(g: MomentGraph) -> list:
    """(vertex, chi_a, chi_b) for every pair of proportional in-edge characters."""
    bad = []
    for v in g.vertices:
        ins = g.in_edges[v]
        for a in range(len(ins)):
            for b in range(a + 1, len(ins)):
                if ins[a][1].is_proportional(ins[b][1]):
                    bad.append((v, list(ins[a][1].coeffs), list(ins[b][1].coeffs)))
    return bad


def require_independent(g: MomentGraph):
    """Raise ProportionalModuli naming the first vertex whose in-edges are dependent."""
    bad = proportional_inedges(g)
    if bad:
        v, a, b = bad[0]
        raise ProportionalModuli(
            a, b, f"in-edge characters {a} and {b} at vertex {v!r} are proportional"
        )


def negated(g: MomentGraph) -> MomentGraph:
    """Same graph with the opposite covector; every edge reverses direction."""
    return g.with_covector([-c for c in g.covector])
