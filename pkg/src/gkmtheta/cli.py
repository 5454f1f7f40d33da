"""Command-line interface.

Exit status: 0 success, 1 validation failure, 2 parse failure, 3 computation
diagnostic (non-polynomial local index, proportional or incompatible moduli).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures
from .basisgen import (
    BasisError,
    BasisMismatch,
    expand,
    flowup_basis,
    structure_constants,
    theta_basis,
)
from .exactpoly import NoCRTSolution, ProportionalModuli
from .io import FileFormatError, dumps_graph, load_basis, load_class, load_graph, write_basis
from .localization import (
    NonPolynomialIndex,
    cell_euler,
    components_through,
    integrate,
    inverse_euler,
    local_index,
    space_euler,
)
from .momentgraph import GraphError, betti, poincare, validate
from .parse import ParseError
from .ppring import GraphMismatch, is_gkm
from .validation import check_level, check_vertex

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_COMPUTE = 0, 1, 2, 3


class _Failure(Exception):
    def __init__(self, status, payload):
        self.status = status
        self.payload = payload


def _table(rows, indent=""):
    rows = [tuple(str(x) for x in r) for r in rows]
    if not rows:
        return ""
    width = max(len(r[0]) for r in rows)
    return "\n".join(indent + r[0].ljust(width) + ("  " + "  ".join(r[1:]) if len(r) > 1 else "")
                     for r in rows)


def _level(g, token):
    """Resolve a command-line level: a vertex id first, else a 1-based integer."""
    if token in g.position:
        return check_level(g, token)
    try:
        number = int(token)
    except ValueError:
        raise GraphError(f"unknown vertex {token!r}") from None
    return check_level(g, number)


def _graph(args):
    g = load_graph(args.graph)
    report = validate(g)
    if not report.ok:
        raise _Failure(EXIT_INVALID, {"kind": "validation", "message": "; ".join(report.errors),
                                      "errors": report.errors})
    return g


def cmd_validate(args):
    g = load_graph(args.graph)
    report = validate(g)
    data = report.to_dict()
    if report.ok:
        data["order"] = list(g.order)
    lines = ["valid" if report.ok else "invalid"]
    lines += [f"error: {e}" for e in report.errors]
    if report.ok:
        lines.append("order: " + " ".join(g.order))
        lines.append("indegree:")
        lines.append(_table(report.indegree.items(), "  "))
    lines += [f"note: {n}" for n in report.notes]
    return (EXIT_OK if report.ok else EXIT_INVALID), data, "\n".join(lines)


def cmd_order(args):
    g = _graph(args)
    rows = [(i + 1, v) for i, v in enumerate(g.order)]
    return EXIT_OK, {"order": list(g.order)}, _table(rows)


def cmd_betti(args):
    g = _graph(args)
    b = betti(g)
    data = {"betti": {f"b{2 * k}": n for k, n in enumerate(b)},
            "poincare": poincare(g).format(["t"])}
    return EXIT_OK, data, " ".join(f"b{2 * k}={n}" for k, n in enumerate(b))


def _euler_entry(g, v, level):
    names = g.vars
    if level is None:
        e = cell_euler(g, v)
        return {"vertex": v, "level": None, "euler": e.value.format(names),
                "degree": e.degree, "inverse": e.inverse().format(names)}
    comps = components_through(g, level, v)
    inv = inverse_euler(g, level, v)
    entry = {"vertex": v, "level": level, "components": comps, "inverse": inv.format(names)}
    if len(comps) == 1:
        e = space_euler(g, level, v)
        entry.update(euler=e.value.format(names), degree=e.degree)
    else:
        entry.update(euler=None, degree=None)
    return entry


def cmd_euler(args):
    g = _graph(args)
    level = _level(g, args.level) if args.level is not None else None
    if args.vertex is not None:
        vertices = [check_vertex(g, args.vertex)]
        if level is not None and g.level_of[args.vertex] > level:
            raise GraphError(f"vertex {args.vertex!r} is not in the piece at level {level}")
    else:
        vertices = list(g.order[:level] if level else g.order)
    entries = [_euler_entry(g, v, level) for v in vertices]
    rows = []
    for e in entries:
        rows.append((e["vertex"], e["euler"] if e["euler"] is not None else f"1/Eu = {e['inverse']}"))
    return EXIT_OK, {"euler": entries}, _table(rows)


def _class(args, g):
    return load_class(args.cls, g)


def cmd_check(args):
    g = _graph(args)
    c = _class(args, g)
    report = is_gkm(c)
    lines = ["gkm: pass" if report.ok else "gkm: fail"]
    for k, e in report.violations:
        lines.append(f"violated: edge {k} {e.u}--{e.v} chi={e.chi.format(g.vars)}")
    return (EXIT_OK if report.ok else EXIT_INVALID), report.to_dict(), "\n".join(lines)


def cmd_integrate(args):
    g = _graph(args)
    c = _class(args, g)
    level = _level(g, args.level) if args.level is not None else len(g.vertices)
    value = integrate(c, level)
    data = {"level": level, "value": value.format(g.vars), "polynomial": value.as_polynomial() is not None}
    return EXIT_OK, data, value.format(g.vars)


def cmd_index(args):
    g = _graph(args)
    c = _class(args, g)
    level = _level(g, args.at)
    value = local_index(c, level)
    data = {"at": g.order[level - 1], "level": level, "index": value.format(g.vars)}
    return EXIT_OK, data, value.format(g.vars)


def _basis_text(basis):
    g = basis.graph
    rows = []
    for v, c in zip(basis.order, basis.classes):
        rows.append([f"{basis.kind}[{v}]"] + [f"{w}: {c[w].format(g.vars)}" for w in basis.order])
    return _table(rows)


def cmd_basis(args):
    g = _graph(args)
    build = theta_basis if args.kind == "theta" else flowup_basis
    basis = build(g, args.crt_order)
    if args.out:
        write_basis(args.out, basis)
    return EXIT_OK, basis.to_dict(), _basis_text(basis)


def _load_basis(args, g):
    basis = load_basis(args.basis, g)
    if basis.kind != "theta":
        raise BasisMismatch("this command needs a theta basis file")
    return basis


def cmd_expand(args):
    g = _graph(args)
    c = _class(args, g)
    basis = _load_basis(args, g)
    coeffs = expand(c, basis)
    data = {"coefficients": {v: a.format(g.vars) for v, a in zip(basis.order, coeffs)}}
    return EXIT_OK, data, _table(data["coefficients"].items())


def cmd_mult(args):
    g = _graph(args)
    basis = _load_basis(args, g)
    i, j = check_vertex(g, args.i), check_vertex(g, args.j)
    consts = structure_constants(basis, i, j)
    data = {"i": i, "j": j, "constants": {k: p.format(g.vars) for k, p in consts.items()}}
    return EXIT_OK, data, _table((f"c[{k}]", t) for k, t in data["constants"].items())


def cmd_example(args):
    try:
        g = fixtures.build(args.name, args.params)
    except (ValueError, IndexError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise _Failure(EXIT_PARSE, {"kind": "usage", "message": str(exc)}) from None
    text = dumps_graph(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK, json.loads(text), text.rstrip("\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a JSON report")
    parser = argparse.ArgumentParser(prog="gkmtheta", parents=[common],
                                     description="Equivariant cohomology of GKM moment graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, graph=True, cls=False):
        p = sub.add_parser(name, parents=[common], help=help)
        if graph:
            p.add_argument("graph", help="graph file (JSON)")
        if cls:
            p.add_argument("cls", metavar="class", help="class file (JSON)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the graph axioms")
    add("order", cmd_order, "print the filtration order")
    add("betti", cmd_betti, "print even Betti numbers")
    p = add("euler", cmd_euler, "equivariant Euler classes")
    p.add_argument("--vertex")
    p.add_argument("--level")
    add("check", cmd_check, "GKM membership of a class", cls=True)
    p = add("integrate", cmd_integrate, "localization integral", cls=True)
    p.add_argument("--level")
    p = add("index", cmd_index, "local index at a vertex", cls=True)
    p.add_argument("--at", required=True, help="vertex id (or 1-based level)")
    p = add("basis", cmd_basis, "flow-up or theta basis")
    p.add_argument("--kind", choices=["flowup", "theta"], default="theta")
    p.add_argument("--crt-order", choices=["forward", "reverse"], default="forward")
    p.add_argument("--out", help="write the basis export to this file")
    p = add("expand", cmd_expand, "coefficients of a class in a theta basis", cls=True)
    p.add_argument("--basis", required=True)
    p = add("mult", cmd_mult, "structure constants of theta_i * theta_j")
    p.add_argument("--basis", required=True)
    p.add_argument("i")
    p.add_argument("j")
    p = add("example", cmd_example, "emit a built-in fixture graph", graph=False)
    p.add_argument("name", help=", ".join(fixtures.FIXTURES))
    p.add_argument("params", nargs="*")
    p.add_argument("--out")
    return parser


def _error_payload(exc):
    if isinstance(exc, FileFormatError):
        out = {"kind": "parse", "message": exc.reason, "file": exc.path}
        if exc.line is not None:
            out.update(line=exc.line, column=exc.column)
        return EXIT_PARSE, out
    if isinstance(exc, ParseError):
        return EXIT_PARSE, {"kind": "parse", "message": exc.reason, "line": exc.line, "column": exc.column}
    if isinstance(exc, NonPolynomialIndex):
        return EXIT_COMPUTE, {"kind": "non_polynomial_index", "message": str(exc),
                              "level": exc.level, "vertex": exc.vertex}
    if isinstance(exc, (ProportionalModuli, NoCRTSolution)):
        return EXIT_COMPUTE, {"kind": "crt", "message": str(exc)}
    if isinstance(exc, (GraphError, GraphMismatch, BasisMismatch)):
        return EXIT_INVALID, {"kind": "validation", "message": str(exc)}
    if isinstance(exc, BasisError):
        return EXIT_COMPUTE, {"kind": "basis", "message": str(exc)}
    raise exc


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    as_json = getattr(args, "json", False)
    try:
        status, data, text = args.func(args)
    except _Failure as failure:
        status, payload = failure.status, failure.payload
        _emit_error(payload, as_json, stdout, stderr)
        return status
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes or re-raised
        status, payload = _error_payload(exc)
        _emit_error(payload, as_json, stdout, stderr)
        return status
    if as_json:
        stdout.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    else:
        stdout.write(text + "\n")
    return status


def _emit_error(payload, as_json, stdout, stderr):
    if as_json:
        stdout.write(json.dumps({"error": payload}, indent=2, ensure_ascii=False) + "\n")
    else:
        where = ""
        if payload.get("line") is not None:
            where = f" (line {payload['line']}, column {payload['column']})"
        stderr.write(f"error: {payload['kind']}: {payload['message']}{where}\n")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
