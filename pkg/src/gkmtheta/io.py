"""JSON file formats for graphs and classes, plus exported bases.

Graph file::

    {"rank": 3, "vars": ["a0", "a1", "a2"], "vertices": ["p0", "p1", "p2"],
     "edges": [{"u": "p0", "v": "p1", "chi": [-1, 1, 0]}, ...],
     "covector": [2, 1, 0], "scale": {"p2": "1/2"}}

Class file::

    {"graph": "p2.json", "values": {"p0": "0", "p1": "a1 - a0", ...}}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .basisgen import BasisError, BasisFamily
from .momentgraph import GraphError, MomentGraph
from .parse import ParseError, parse_polynomial
from .ppring import CohomologyClass


class FileFormatError(ValueError):
    """Unreadable or malformed input file (exit status 2 in the CLI)."""

    def __init__(self, message, path=None, line=None, column=None):
        self.path = str(path) if path is not None else None
        self.line = line
        self.column = column
        self.reason = message
        where = self.path or "<input>"
        if line is not None:
            where += f":{line}:{column}"
        super().__init__(f"{where}: {message}")


def _load_json(text: str, path=None):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(exc.msg, path, exc.lineno, exc.colno) from None


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read file: {exc.strerror}", path) from None
    except UnicodeDecodeError:
        raise FileFormatError("file is not valid UTF-8", path) from None


def _int_vector(value, what, path):
    if not isinstance(value, list) or not value:
        raise FileFormatError(f"{what} must be a non-empty list of integers", path)
    for c in value:
        if isinstance(c, bool) or not isinstance(c, int):
            raise FileFormatError(f"{what} must contain integers only, found {c!r}", path)
    return value


def _fraction(value, what, path) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise FileFormatError(f"{what} must be an integer or a 'p/q' string, found {value!r}", path)
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise FileFormatError(f"{what}: cannot read {value!r} as a rational number", path) from None


def graph_from_dict(data, path=None) -> MomentGraph:
    if not isinstance(data, dict):
        raise FileFormatError("graph file must hold a JSON object", path)
    for key in ("rank", "vertices", "edges", "covector"):
        if key not in data:
            raise FileFormatError(f"graph file is missing {key!r}", path)
    rank = data["rank"]
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
        raise FileFormatError("'rank' must be a positive integer", path)
    names = data.get("vars")
    if names is not None and (not isinstance(names, list) or not all(isinstance(n, str) for n in names)):
        raise FileFormatError("'vars' must be a list of strings", path)
    for n in names or ():
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
            raise FileFormatError(f"variable name {n!r} is not an identifier", path)
    vertices = data["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise FileFormatError("'vertices' must be a list of strings", path)
    edges = []
    if not isinstance(data["edges"], list):
        raise FileFormatError("'edges' must be a list", path)
    for k, e in enumerate(data["edges"]):
        if not isinstance(e, dict) or not {"u", "v", "chi"} <= set(e):
            raise FileFormatError(f"edge {k} must be an object with 'u', 'v' and 'chi'", path)
        if not isinstance(e["u"], str) or not isinstance(e["v"], str):
            raise FileFormatError(f"edge {k}: endpoints must be vertex id strings", path)
        chi = _int_vector(e["chi"], f"edge {k} 'chi'", path)
        if not any(chi):
            raise FileFormatError(f"edge {k}: character must be nonzero", path)
        edges.append((e["u"], e["v"], chi))
    covector = _int_vector(data["covector"], "'covector'", path)
    scale_raw = data.get("scale") or {}
    if not isinstance(scale_raw, dict):
        raise FileFormatError("'scale' must be an object mapping vertex ids to 'p/q'", path)
    scale = {v: _fraction(s, f"scale of {v!r}", path) for v, s in scale_raw.items()}
    return MomentGraph(vertices, edges, covector, vars=names, scale=scale, rank=rank)


def graph_to_dict(g: MomentGraph) -> dict:
    out = {
        "rank": g.rank,
        "vars": list(g.vars),
        "vertices": list(g.vertices),
        "edges": [{"u": e.u, "v": e.v, "chi": list(e.chi.coeffs)} for e in g.edges],
        "covector": list(g.covector),
    }
    if g.scale:
        out["scale"] = {v: str(s) for v, s in g.scale}
    return out


def dumps_graph(g: MomentGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2, ensure_ascii=False) + "\n"


def loads_graph(text: str, path=None) -> MomentGraph:
    return graph_from_dict(_load_json(text, path), path)


def load_graph(path) -> MomentGraph:
    return loads_graph(_read(path), path)


def _value_position(text, key):
    """(line, column) of the first character inside the JSON string value of ``key``."""
    if text is None:
        return None
    m = re.search(r'"' + re.escape(key) + r'"\s*:\s*"', text)
    if not m:
        return None
    offset = m.end()
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def class_from_dict(data, g: MomentGraph, path=None, text=None) -> CohomologyClass:
    if not isinstance(data, dict) or not isinstance(data.get("values"), dict):
        raise FileFormatError("class file must be an object with a 'values' object", path)
    values = {}
    for v, p in data["values"].items():
        if isinstance(p, bool) or not isinstance(p, (str, int)):
            raise FileFormatError(f"value at {v!r} must be polynomial text", path)
        try:
            values[v] = parse_polynomial(str(p), g.vars)
        except ParseError as exc:
            pos = _value_position(text, v) if isinstance(p, str) else None
            if pos is not None and exc.line == 1:
                line, col = pos[0], pos[1] + exc.column - 1
            else:
                line, col = exc.line, exc.column
            raise FileFormatError(f"value at {v!r}: {exc.reason}", path, line, col) from None
    return CohomologyClass(g, values)


def class_to_dict(c: CohomologyClass, graph_ref: str | None = None) -> dict:
    out = {}
    if graph_ref is not None:
        out["graph"] = graph_ref
    out["values"] = c.format()
    return out


def dumps_class(c: CohomologyClass, graph_ref=None) -> str:
    return json.dumps(class_to_dict(c, graph_ref), indent=2, ensure_ascii=False) + "\n"


def load_class(path, g: MomentGraph) -> CohomologyClass:
    text = _read(path)
    return class_from_dict(_load_json(text, path), g, path, text)


def load_basis(path, g: MomentGraph) -> BasisFamily:
    text = _read(path)
    data = _load_json(text, path)
    if not isinstance(data, dict):
        raise FileFormatError("basis file must hold a JSON object", path)
    try:
        return BasisFamily.from_dict(g, data)
    except ParseError as exc:
        raise FileFormatError(f"basis entry: {exc.reason}", path) from None


def write_basis(path, basis: BasisFamily):
    Path(path).write_text(basis.dumps(), encoding="utf-8")


__all__ = [
    "BasisError",
    "FileFormatError",
    "GraphError",
    "class_from_dict",
    "class_to_dict",
    "dumps_class",
    "dumps_graph",
    "graph_from_dict",
    "graph_to_dict",
    "load_basis",
    "load_class",
    "load_graph",
    "loads_graph",
    "write_basis",
]
