"""Input validation helpers shared by the estimator and the CLI."""

from __future__ import annotations

from collections.abc import Mapping
from os import PathLike

from .momentgraph import GraphError, MomentGraph, validate
from .ppring import CohomologyClass, GraphMismatch


def check_graph(X, validate_graph: bool = True) -> MomentGraph:
    """Coerce ``X`` (graph, graph-file dict, or path) to a validated MomentGraph."""
    from .io import graph_from_dict, load_graph

    if isinstance(X, MomentGraph):
        g = X
    elif isinstance(X, Mapping):
        g = graph_from_dict(dict(X))
    elif isinstance(X, (str, PathLike)):
        g = load_graph(X)
    else:
        raise TypeError(f"expected a MomentGraph, a graph dict or a path, got {type(X).__name__}")
    if validate_graph:
        validate(g).raise_if_invalid()
    return g


def check_class(c, graph: MomentGraph) -> CohomologyClass:
    """Coerce ``c`` to a class on ``graph``; mappings may hold polynomial text."""
    if isinstance(c, CohomologyClass):
        if c.graph != graph:
            raise GraphMismatch("class lives on a different graph")
        return c
    if isinstance(c, Mapping):
        values = c["values"] if "values" in c else c
        return CohomologyClass(graph, values)
    raise TypeError(f"expected a CohomologyClass or a mapping, got {type(c).__name__}")


def check_classes(X, graph: MomentGraph) -> list:
    if isinstance(X, (CohomologyClass, Mapping)):
        return [check_class(X, graph)]
    return [check_class(c, graph) for c in X]


def check_level(graph: MomentGraph, level) -> int:
    """A 1-based level, given as an int or as the id of the piece's top vertex."""
    m = len(graph.vertices)
    if isinstance(level, str) and level in graph.position:
        return graph.level_of[level]
    if isinstance(level, bool) or not isinstance(level, int):
        raise GraphError(f"level must be an integer in 1..{m} or a vertex id, got {level!r}")
    if not 1 <= level <= m:
        raise GraphError(f"level must be in 1..{m}, got {level}")
    return level


def check_vertex(graph: MomentGraph, v) -> str:
    if v not in graph.position:
        raise GraphError(f"unknown vertex {v!r}")
    return v
