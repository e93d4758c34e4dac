import numpy as np
import pytest
from sympy.polys.domains import QQ

from milnordeg import NotZeroDimensional, ResourceLimitExceeded
from milnordeg.poly import format_polynomial, parse_map, parse_polynomial
from milnordeg.quotient import (
    Budget,
    IdealRecord,
    coordinates,
    groebner_basis,
    local_multiplicity,
    multiplication_matrix,
    normal_form,
    origin_is_only_zero,
    quotient_basis,
    satisfies_buchberger,
    trace,
)

XY = ["x", "y"]


def algebra_of(text, variables=XY, order="grevlex"):
    return quotient_basis(groebner_basis(IdealRecord(parse_map(text, variables), order)))


def test_lex_basis():
    gb = groebner_basis(IdealRecord(parse_map("x^2 + y^2 - 1, x - y", XY), "lex"))
    assert [format_polynomial(g) for g in gb] == ["x - y", "y^2 - 1/2"]
    assert satisfies_buchberger(gb)


def test_reduced_basis_is_monic():
    gb = groebner_basis(IdealRecord(parse_map("3*x^2 - 3*y^2, -6*x*y", XY)))
    assert all(g.LC == 1 for g in gb)
    assert satisfies_buchberger(gb)


def test_unit_ideal():
    gb = groebner_basis(IdealRecord(parse_map("x, x - 1", XY)))
    assert gb.is_unit
    assert quotient_basis(gb).dimension == 0


def test_not_zero_dimensional_marker():
    marker = algebra_of("x^2")
    assert isinstance(marker, NotZeroDimensional)
    assert marker.variable == "y"


@pytest.mark.parametrize(
    ["budget", "message"],
    [
        (Budget(terms=2), "term budget 2 exceeded while reducing"),
        (Budget(degree=1), "degree budget"),
        (Budget(pairs=0), "pair budget"),
        (Budget(work=1), "work budget"),
    ],
)
def test_budget(budget, message):
    with pytest.raises(ResourceLimitExceeded, match=message):
        groebner_basis(IdealRecord(parse_map("x^2 + y^2 - 1, x - y", XY)), budget)


def test_standard_monomials():
    algebra = algebra_of("x^2, y^2")
    assert algebra.basis == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert origin_is_only_zero(algebra)
    assert local_multiplicity(algebra) == 4


def test_multiplication_matrices_commute():
    algebra = algebra_of("x^2 - y, y^2 - x")
    x_matrix, y_matrix = algebra.mult_matrices
    assert algebra.dimension == 4
    assert np.array_equal(x_matrix @ y_matrix, y_matrix @ x_matrix)


def test_normal_form_and_coordinates():
    algebra = algebra_of("x^2 - 1", ["x"])
    x3 = parse_polynomial("x^3 + 2", ["x"])
    assert format_polynomial(normal_form(x3, algebra.gb)) == "x + 2"
    assert coordinates(algebra, x3).tolist() == [QQ(2), QQ(1)]


def test_trace_counts_zeros():
    # the trace of multiplication by x sums x over the zeros {-1, 1, 2}
    algebra = algebra_of("(x^2 - 1)*(x - 2)", ["x"])
    x = parse_polynomial("x", ["x"])
    assert trace(multiplication_matrix(algebra, x)) == 2


def test_zeros_away_from_origin():
    algebra = algebra_of("x^2 - x, y^2")
    assert algebra.dimension == 4
    assert not origin_is_only_zero(algebra)
    assert local_multiplicity(algebra) == 2
