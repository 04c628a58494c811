from fractions import Fraction

import pytest

from src.homology.euler_series import (
    EulerSeries,
    PoleAtOneError,
    additivity_check,
    cartan_inverse_check,
    euler_at_one,
    euler_series,
    ext_dim,
    pole_free_check,
    restriction_check,
    simple_euler_matrix,
    symmetrization_check,
    t,
)
from src.quiver.quiverrep import IndecType, all_indecomposables

U, V, W = IndecType.U, IndecType.V, IndecType.W


def test_series_text():
    assert str(EulerSeries((1, -2))) == "1-2t"
    assert str(EulerSeries((0, -1))) == "-t"
    assert str(EulerSeries((2, 0, 3))) == "2+3t^2"
    assert str(EulerSeries((0,))) == "0"
    assert str(EulerSeries((1,), (1, 1))) == "1/(1+t)"
    assert str(EulerSeries((0, -1), (1, 1))) == "-t/(1+t)"
    assert str(EulerSeries((1, -1), (1, 1))) == "(1-t)/(1+t)"


def test_series_arithmetic():
    geometric = EulerSeries((1,), (1, 1))
    assert EulerSeries.from_expr(1 / (1 + t)) == geometric
    assert EulerSeries.from_expr((2 - 2 * t) / 2) == EulerSeries((1, -1))
    assert geometric.expand(5) == (1, -1, 1, -1, 1)
    assert geometric.at_one() == Fraction(1, 2)
    assert not geometric.is_polynomial and geometric.degree is None
    assert EulerSeries((0, -1, 0)).degree == 1
    assert EulerSeries((0,)).degree == 0


def test_series_errors():
    with pytest.raises(PoleAtOneError):
        EulerSeries((1,), (1, -1)).at_one()
    with pytest.raises(ValueError):
        EulerSeries((1,), (2, 1))


def test_to_dict():
    d = EulerSeries((0, -1), (1, 1)).to_dict()
    assert d == {
        "numerator_coeffs": [0, -1],
        "denominator_coeffs": [1, 1],
        "value_at_1_num": -1,
        "value_at_1_den": 2,
    }


@pytest.mark.parametrize("p", range(6))
def test_loop_simple_has_ext_in_every_degree(p):
    assert ext_dim(V(3), V(3), p, 3) == 1


def test_ext_into_u_module():
    assert ext_dim(V(1), U(2, 3), 0, 3) == 0
    assert ext_dim(V(1), U(2, 3), 1, 3) == 1


def test_v_series():
    assert str(euler_series(V(3), V(3), 3)) == "1/(1+t)"
    assert str(euler_series(V(2), V(1), 3)) == "1/(1+t)"
    assert str(euler_series(V(1), V(2), 3)) == "-t/(1+t)"
    assert euler_at_one(V(1), V(2), 3) == Fraction(-1, 2)


def test_finite_series():
    assert euler_series(W(1, 1), U(2, 3), 3) == EulerSeries((0, -1))
    assert euler_series(U(3, 1), V(2), 3) == EulerSeries((0,))
    assert euler_series(U(3, 2), V(2), 3) == EulerSeries((1,))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_simple_matrix_inverts_cartan(n):
    report = cartan_inverse_check(n)
    assert report.ok
    assert len(simple_euler_matrix(n)) == n


@pytest.mark.parametrize("n", [1, 2, 3])
def test_additivity_and_symmetrization(n):
    mods = all_indecomposables(n)
    for a in mods:
        for b in mods:
            assert additivity_check(a, b, n).ok
            assert symmetrization_check(a, b, n).ok


@pytest.mark.parametrize("n", [2, 3])
def test_restriction_is_polynomial_of_degree_one(n):
    assert restriction_check(n) == {}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_no_pole_at_one(n):
    assert pole_free_check(n) == []
