from fractions import Fraction

import pytest
from hypothesis import strategies as st

from gkmtheta.exactpoly import LinearForm, Polynomial
from gkmtheta.fixtures import flag_s3, product_graph, projective_space, weighted_p2
from gkmtheta.parse import parse_polynomial

X = ("x1", "x2", "x3")


def poly(text, names=X):
    return parse_polynomial(text, names)


def polynomials(rank=3, max_terms=5, max_degree=3, coeff=6):
    mono = st.tuples(*[st.integers(0, max_degree) for _ in range(rank)])
    c = st.fractions(min_value=-coeff, max_value=coeff, max_denominator=4)
    return st.dictionaries(mono, c, max_size=max_terms).map(lambda t: Polynomial(rank, t))


def linear_forms(rank=3, bound=3):
    vec = st.lists(st.integers(-bound, bound), min_size=rank, max_size=rank)
    return vec.filter(any).map(LinearForm)


@pytest.fixture(scope="session")
def smooth_fixtures():
    """Smooth fixtures with a polynomial theta basis, keyed by name."""
    return {
        "P1": projective_space(1),
        "P2": projective_space(2),
        "P3": projective_space(3),
        "flag3": flag_s3(),
        "P1xP1": product_graph(projective_space(1), projective_space(1)),
    }


@pytest.fixture(scope="session")
def wp2_consistent():
    return weighted_p2("consistent")


__all__ = ["Fraction", "X", "poly", "polynomials", "linear_forms"]
