"""Flow-up classes and the canonical theta basis.

``flowup_basis`` builds, for every vertex ``x_i``, a class vanishing below
``x_i`` whose value at ``x_i`` is the cell Euler class.  It starts from the
class supported at the top of the ``i``-th piece and extends it one vertex
at a time, solving the in-edge congruences at the new vertex by CRT.

``theta_from_flowup`` then clears the higher local indices of each flow-up
class by subtracting multiples of later flow-up classes, smallest offending
index first.  The result is independent of the flow-up family used.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .exactpoly import NoCRTSolution, Polynomial, crt_lift, divides_linear
from .localization import cell_euler, local_index
from .momentgraph import GraphError, MomentGraph, require_independent, subgraph
from .ppring import CohomologyClass, is_gkm

KINDS = ("flowup", "theta")
CRT_ORDERS = ("forward", "reverse")


class BasisError(ValueError):
    pass


class BasisMismatch(BasisError):
    """A stored basis does not fit the graph it is used with."""


@dataclass(frozen=True)
class BasisFamily:
    graph: MomentGraph
    kind: str
    classes: tuple  # one CohomologyClass per vertex, in filtration order

    @property
    def order(self) -> tuple:
        return self.graph.order

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, key) -> CohomologyClass:
        """Index by 0-based position in the filtration order or by vertex id."""
        if isinstance(key, str):
            return self.classes[self.graph.level_of[key] - 1]
        return self.classes[key]

    def restriction_matrix(self) -> list:
        """Row ``i``: values of class ``i`` at the vertices, both in filtration order."""
        return [c.in_order() for c in self.classes]

    def combine(self, coefficients) -> CohomologyClass:
        """sum(a_i * class_i)."""
        coefficients = list(coefficients)
        if len(coefficients) != len(self.classes):
            raise BasisError(f"{len(coefficients)} coefficients for {len(self.classes)} classes")
        total = CohomologyClass.zero(self.graph)
        for a, c in zip(coefficients, self.classes):
            if a:
                total = total + c * a
        return total

    def check(self) -> list:
        """Problems with triangularity, the diagonal, or GKM membership (empty if none)."""
        problems = []
        order = self.order
        for i, c in enumerate(self.classes):
            top = order[i]
            for j in range(i):
                if c[order[j]]:
                    problems.append(f"class {top!r} does not vanish at {order[j]!r}")
            if c[top] != cell_euler(self.graph, top).value:
                problems.append(f"class {top!r} has the wrong diagonal value")
            if not is_gkm(c):
                problems.append(f"class {top!r} is not GKM")
        return problems

    def to_dict(self) -> dict:
        names = self.graph.vars
        return {
            "kind": self.kind,
            "order": list(self.order),
            "vars": list(names),
            "classes": {
                v: {w: c[w].format(names) for w in self.order}
                for v, c in zip(self.order, self.classes)
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, graph: MomentGraph, data: dict) -> "BasisFamily":
        kind = data.get("kind")
        if kind not in KINDS:
            raise BasisMismatch(f"unknown basis kind {kind!r}")
        order = tuple(data.get("order", ()))
        if order != graph.order:
            raise BasisMismatch("basis file filtration order does not match the graph")
        if list(data.get("vars", graph.vars)) != list(graph.vars):
            raise BasisMismatch("basis file variables do not match the graph")
        table = data.get("classes", {})
        classes = []
        for v in order:
            if v not in table:
                raise BasisMismatch(f"basis file has no class for vertex {v!r}")
            try:
                classes.append(CohomologyClass(graph, table[v]))
            except GraphError as exc:
                raise BasisMismatch(f"basis class {v!r}: {exc}") from None
        return cls(graph, kind, tuple(classes))


def tau_class(g: MomentGraph, level: int) -> CohomologyClass:
    """Class on the ``level``-th piece supported at its top vertex, with the cell Euler class there."""
    piece = subgraph(g, level)
    top = g.order[level - 1]
    tau = CohomologyClass.supported_at(piece, top, cell_euler(g, top).value)
    report = is_gkm(tau)
    if not report:
        bad = ", ".join(str(e) for _, e in report.violations)
        raise BasisError(f"top class at {top!r} violates the GKM condition on {bad}")
    return tau


def extend_class(g: MomentGraph, c: CohomologyClass, crt_order: str = "forward") -> CohomologyClass:
    """Lift a GKM class on the piece at level j to the piece at level j+1.

    Existing values are kept; the value at the new vertex solves the
    congruences along its in-edges.  ``crt_order`` selects the order in
    which the residues are fed to the CRT solver.
    """
    if crt_order not in CRT_ORDERS:
        raise ValueError(f"crt_order must be one of {CRT_ORDERS}")
    j = len(c.graph.vertices)
    if j >= len(g.vertices):
        raise GraphError("class already lives on the whole graph")
    if c.graph.vertices != g.order[:j]:
        raise GraphError("class does not live on a filtered piece of this graph")
    new = g.order[j]
    residues = [(c[tail], w) for tail, w in g.in_edges[new]]
    if crt_order == "reverse":
        residues.reverse()
    if residues:
        try:
            value = crt_lift(residues)
        except NoCRTSolution as exc:
            raise BasisError(f"cannot extend the class to vertex {new!r}: {exc}") from exc
    else:
        value = Polynomial.zero(g.rank)
    piece = subgraph(g, j + 1)
    return CohomologyClass(piece, [c[v] for v in g.order[:j]] + [value])


def flowup_class(g: MomentGraph, level: int, crt_order: str = "forward") -> CohomologyClass:
    c = tau_class(g, level)
    for _ in range(level, len(g.vertices)):
        c = extend_class(g, c, crt_order)
    return c


def flowup_basis(g: MomentGraph, crt_order: str = "forward") -> BasisFamily:
    """Flow-up classes, one per vertex in filtration order.

    Raises:
        ProportionalModuli: some vertex has proportional in-edge characters.
        BasisError: a lift does not exist (the graph is not a GKM graph of a
            filtrable variety).
    """
    require_independent(g)
    classes = tuple(flowup_class(g, i, crt_order) for i in range(1, len(g.vertices) + 1))
    return BasisFamily(g, "flowup", classes)


def theta_from_flowup(family: BasisFamily) -> BasisFamily:
    """Canonical basis obtained from any flow-up family by index elimination."""
    g = family.graph
    m = len(family.classes)
    thetas = []
    for i, phi in enumerate(family.classes):
        current = phi
        for k in range(i + 1, m):
            idx = local_index(current, k + 1)
            if idx:
                current = current - family.classes[k] * idx
        thetas.append(current)
    return BasisFamily(g, "theta", tuple(thetas))


def theta_basis(g: MomentGraph, crt_order: str = "forward") -> BasisFamily:
    """The unique family with vanishing-below, Euler-diagonal and unit index matrix.

    Raises:
        NonPolynomialIndex: a local index needed for the elimination is not
            a polynomial.
    """
    return theta_from_flowup(flowup_basis(g, crt_order))


def expand(c: CohomologyClass, basis: BasisFamily) -> list:
    """Coefficients of ``c`` in the theta basis, read off as its local indices.

    The reconstruction is checked exactly.

    Raises:
        NonPolynomialIndex: some index is not polynomial.
        BasisError: the class is not in the span of the basis.
    """
    if basis.kind != "theta":
        raise BasisError("expand needs a theta basis")
    g = basis.graph
    if c.graph != g:
        raise BasisError("class and basis live on different graphs")
    coeffs = [local_index(c, i) for i in range(1, len(g.vertices) + 1)]
    if basis.combine(coeffs) != c:
        raise BasisError("class is not recovered from its local indices")
    return coeffs


def solve_triangular(c: CohomologyClass, basis: BasisFamily) -> list:
    """Coefficients of ``c`` in any flow-up-type family, by back substitution.

    Works down the lower-triangular restriction matrix, dividing by the
    diagonal Euler classes.  Used as an independent check on ``expand``.
    """
    g = basis.graph
    order = g.order
    rest = c
    coeffs = []
    for i, cls in enumerate(basis.classes):
        v = order[i]
        value = rest[v]
        diag = cell_euler(g, v)
        q = value.scale(1 / diag.scale)
        for form, mult in diag.factors:
            for _ in range(mult):
                q = divides_linear(form, q) if q is not None else None
        if q is None:
            raise BasisError(f"value at {v!r} is not divisible by its cell Euler class")
        coeffs.append(q)
        if q:
            rest = rest - cls * q
    if not rest.is_zero():
        raise BasisError("class is not in the span of the family")
    return coeffs


def structure_constants(basis: BasisFamily, i, j) -> dict:
    """Coefficients of theta_i * theta_j in the theta basis, keyed by vertex id."""
    a = basis[i]
    b = basis[j]
    coeffs = expand(a * b, basis)
    return dict(zip(basis.order, coeffs))


__all__ = [
    "BasisError",
    "BasisMismatch",
    "BasisFamily",
    "expand",
    "extend_class",
    "flowup_basis",
    "flowup_class",
    "solve_triangular",
    "structure_constants",
    "tau_class",
    "theta_basis",
    "theta_from_flowup",
]
