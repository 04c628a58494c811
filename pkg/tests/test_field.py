from fractions import Fraction

import pytest

from src.utils.field import ExactField, get_field


def test_rank_depends_on_characteristic():
    q, f2 = get_field(0), get_field(2)
    m = q.from_rows([[1, 1], [1, -1]])
    assert q.rank(m) == 2
    assert f2.rank(f2.from_rows([[1, 1], [1, -1]])) == 1


def test_elements_are_reduced():
    f3 = get_field(3)
    assert f3.element(4) == 1
    assert f3.element(-1) == 2
    assert f3.element(Fraction(1, 2)) == 2


def test_kernel_and_nullity():
    q = get_field(0)
    m = q.from_rows([[1, 2, 3], [2, 4, 6]])
    k = q.kernel(m)
    assert k.shape == (3, 2)
    assert q.is_zero(q.mul(m, k))
    assert q.nullity(m) == 2


def test_solve_columns():
    q = get_field(0)
    b = q.from_rows([[1, 0], [0, 1], [1, 1]])
    y = q.from_rows([[2], [3], [5]])
    assert list(q.solve_columns(b, y)) == [2, 3]
    with pytest.raises(ValueError):
        q.solve_columns(b, q.from_rows([[1], [0], [0]]))


def test_complement_and_containment():
    q = get_field(0)
    e1 = q.from_rows([[1], [0]])
    comp = q.complement(e1, 2)
    assert list(comp) == [0, 1]
    assert q.contains_columns(e1, q.from_rows([[3], [0]]))
    assert not q.contains_columns(e1, comp)


def test_det_and_inverse():
    q, f3 = get_field(0), get_field(3)
    m = q.from_rows([[2, 1], [1, 1]])
    assert q.det(m) == 1
    assert q.mul(m, q.inverse(m)) == q.identity(2)
    assert f3.det(f3.from_rows([[2, 0], [0, 2]])) == 1


def test_empty_shapes():
    q = get_field(0)
    assert q.rank(q.zeros(0, 3)) == 0
    assert q.hstack([], 2).shape == (2, 0)
    assert q.vstack([], 2).shape == (0, 2)


def test_unsupported_order():
    with pytest.raises(ValueError):
        ExactField(4)
    assert get_field(5) == ExactField(5)
