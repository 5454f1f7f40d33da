"""Scikit-learn style front end.

``GKMBasis`` is fitted on a moment graph and then maps classes to their
coefficient vectors in the fitted basis (``transform``) and back
(``inverse_transform``).  Coefficients are exact Polynomials held in numpy
object arrays, one column per vertex in filtration order.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .basisgen import (
    CRT_ORDERS,
    KINDS,
    expand,
    flowup_basis,
    solve_triangular,
    structure_constants,
    theta_from_flowup,
)
from .localization import integrate, local_index
from .momentgraph import betti, poincare, require_independent
from .ppring import is_gkm
from .validation import check_classes, check_graph, check_level


class GKMBasis(BaseEstimator):
    """Free basis of the equivariant cohomology of a moment graph.

    Parameters
    ----------
    kind : {"theta", "flowup"}
        ``"theta"`` gives the canonical basis with unit local-index matrix;
        ``"flowup"`` stops after the CRT construction.
    crt_order : {"forward", "reverse"}
        Order in which in-edge residues are fed to the CRT solver.  The theta
        basis does not depend on it.

    Attributes
    ----------
    graph_ : MomentGraph
    order_ : tuple of vertex ids, the filtration order
    betti_ : list of even Betti numbers
    flowup_ : BasisFamily
    basis_ : BasisFamily of the requested kind
    """

    def __init__(self, kind="theta", crt_order="forward"):
        self.kind = kind
        self.crt_order = crt_order

    def fit(self, X, y=None):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.crt_order not in CRT_ORDERS:
            raise ValueError(f"crt_order must be one of {CRT_ORDERS}, got {self.crt_order!r}")
        g = check_graph(X)
        require_independent(g)
        self.graph_ = g
        self.order_ = g.order
        self.betti_ = betti(g)
        self.poincare_ = poincare(g)
        self.flowup_ = flowup_basis(g, self.crt_order)
        self.basis_ = theta_from_flowup(self.flowup_) if self.kind == "theta" else self.flowup_
        self.n_vertices_ = len(g.vertices)
        return self

    def transform(self, X):
        """Coefficient rows for one class or a sequence of classes."""
        check_is_fitted(self)
        classes = check_classes(X, self.graph_)
        out = np.empty((len(classes), self.n_vertices_), dtype=object)
        for r, c in enumerate(classes):
            if self.kind == "theta":
                row = expand(c, self.basis_)
            else:
                row = solve_triangular(c, self.basis_)
            out[r, :] = row
        return out

    def inverse_transform(self, X):
        check_is_fitted(self)
        X = np.asarray(X, dtype=object)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        return [self.basis_.combine(list(row)) for row in X]

    def local_indices(self, X):
        """Matrix of local indices I_k(c), one row per class."""
        check_is_fitted(self)
        classes = check_classes(X, self.graph_)
        out = np.empty((len(classes), self.n_vertices_), dtype=object)
        for r, c in enumerate(classes):
            out[r, :] = [local_index(c, k) for k in range(1, self.n_vertices_ + 1)]
        return out

    def integrate(self, c, level=None):
        check_is_fitted(self)
        (c,) = check_classes(c, self.graph_)
        level = None if level is None else check_level(self.graph_, level)
        return integrate(c, level)

    def is_member(self, c) -> bool:
        check_is_fitted(self)
        (c,) = check_classes(c, self.graph_)
        return bool(is_gkm(c))

    def structure_constants(self, i, j) -> dict:
        check_is_fitted(self)
        if self.kind != "theta":
            raise ValueError("structure constants need kind='theta'")
        return structure_constants(self.basis_, i, j)
