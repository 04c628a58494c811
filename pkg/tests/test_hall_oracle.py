import pytest

from src.lie.liecore import LieElement
from src.quiver.hall_oracle import (
    BudgetExceededError,
    euler_characteristic_fit,
    gaussian_binomial,
    hall_bracket_oracle,
    hall_product,
    iter_subspaces,
    submodule_variety_count,
    variety_size_bound,
)
from src.quiver.quiverrep import IndecType
from src.utils.field import get_field

U, V, W = IndecType.U, IndecType.V, IndecType.W


def test_gaussian_binomials():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 3) == 13
    assert gaussian_binomial(2, 0, 5) == 1
    assert gaussian_binomial(2, 3, 2) == 0


@pytest.mark.parametrize("d,k,p", [(3, 1, 2), (3, 2, 2), (2, 1, 3), (4, 2, 2)])
def test_subspace_enumeration_is_exhaustive(d, k, p):
    fld = get_field(p)
    spaces = list(iter_subspaces(d, k, fld))
    assert len(spaces) == gaussian_binomial(d, k, p)
    assert all(fld.rank(s) == k for s in spaces)
    assert len({tuple(s) for s in spaces}) == len(spaces)


def test_variety_count_small_extension():
    # S_1 on top of the projective at vertex 2 inside U(1,2)
    assert submodule_variety_count(W(1, 1), U(2, 2), U(1, 2), 2, 2) == 1
    assert submodule_variety_count(U(2, 2), W(1, 1), U(1, 2), 2, 2) == 0
    # dimension vectors that do not add up
    assert submodule_variety_count(W(1, 1), V(2), U(1, 2), 2, 2) == 0


def test_fit_with_equal_counts():
    fit = euler_characteristic_fit(W(1, 1), U(2, 2), U(1, 2), 2)
    assert fit.slope == 0
    assert fit.value == 1


def test_hall_product_and_bracket():
    assert hall_product(W(1, 1), U(2, 2), 2) == {U(1, 2): 1, U(2, 1): 1}
    expected = LieElement({"U(1,2)": 1, "U(2,1)": 1})
    assert hall_bracket_oracle(W(1, 1), U(2, 2), 2) == expected
    assert hall_bracket_oracle(U(2, 2), W(1, 1), 2) == expected * -1


def test_bracket_of_a_module_with_itself_vanishes():
    assert hall_bracket_oracle(V(1), V(1), 2).is_zero()


def test_budget_guard():
    assert variety_size_bound((1, 2), (0, 1), 2) == 3
    with pytest.raises(BudgetExceededError) as exc:
        hall_bracket_oracle(V(1), V(2), 2, budget=1)
    assert exc.value.required == 3
    assert exc.value.budget == 1


def test_fit_needs_two_primes():
    with pytest.raises(ValueError):
        euler_characteristic_fit(W(1, 1), U(2, 2), U(1, 2), 2, primes=(2,))
