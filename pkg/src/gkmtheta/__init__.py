"""Exact equivariant cohomology of GKM moment graphs.

The package computes piecewise polynomial classes on a moment graph, the
Bialynicki-Birula filtration it induces, equivariant Euler classes and
localization integrals, and from those the flow-up and theta bases of the
equivariant cohomology as a free module over the polynomial ring.
"""

from .basisgen import (
    BasisError,
    BasisFamily,
    BasisMismatch,
    expand,
    flowup_basis,
    flowup_class,
    solve_triangular,
    structure_constants,
    theta_basis,
    theta_from_flowup,
)
from .estimator import GKMBasis
from .exactpoly import (
    LinearForm,
    NoCRTSolution,
    Polynomial,
    ProportionalModuli,
    RankMismatch,
    RationalFunction,
    crt_lift,
    divides_linear,
    rational_sum,
    reduce_mod_linear,
)
from .fixtures import affine_chart, flag_s3, point, product_graph, projective_space, weighted_p2
from .io import FileFormatError, load_basis, load_class, load_graph
from .localization import (
    EulerClass,
    NonPolynomialIndex,
    cell_euler,
    integrate,
    local_index,
    space_euler,
)
from .momentgraph import (
    CycleError,
    Edge,
    GraphError,
    MomentGraph,
    betti,
    filtration_order,
    poincare,
    subgraph,
    validate,
)
from .parse import ParseError, parse_polynomial
from .ppring import CohomologyClass, GraphMismatch, is_gkm, restrict

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
