import pytest

from src.roots.rootsys import (
    InvalidRankError,
    RankMismatchError,
    Root,
    build_root_system,
    gram_matrix,
    inner,
    is_nonnegative_combination,
    membership,
    root_from_simple_coords,
    simple_coords,
    simple_roots,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_positive_root_counts(n):
    rs = build_root_system(n)
    assert len(rs.phi_plus_B) == n * n
    assert len(rs.phi_plus_C) == n * n
    assert len(rs.phi_plus_BC) == n * n + n
    assert len(rs.phi_BC) == 2 * (n * n + n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_positive_roots_are_nonnegative_in_simple_coords(n):
    for r in build_root_system(n).phi_plus_BC:
        assert is_nonnegative_combination(r)
        assert root_from_simple_coords(simple_coords(r)) == r


def test_simple_roots():
    assert simple_roots(3) == (Root((1, -1, 0)), Root((0, 1, -1)), Root((0, 0, 1)))
    assert root_from_simple_coords([1, 1, 1]) == Root((1, 0, 0))
    assert root_from_simple_coords([0, 2, 2]) == Root((0, 2, 0))


def test_membership_by_type():
    long_root = Root((2, 0))
    short_root = Root((1, 0))
    assert membership(long_root, "C") and not membership(long_root, "B")
    assert membership(short_root, "B") and not membership(short_root, "C")
    assert membership(long_root, "BC") and membership(short_root, "BC")


def test_inner_and_gram():
    a, b = Root((1, 1)), Root((1, -1))
    assert inner(a, b) == 0
    assert inner(a, a) == 2
    assert gram_matrix([a, b]).tolist() == [[2, 0], [0, 2]]


def test_str():
    assert str(Root((1, -1, 0))) == "e1-e2"
    assert str(Root((0, 2))) == "2e2"
    assert str(Root((1, 0, 1))) == "e1+e3"
    assert str(Root.zero(2)) == "0"


def test_errors():
    with pytest.raises(InvalidRankError):
        build_root_system(0)
    with pytest.raises(RankMismatchError):
        Root((1, 0)) + Root((1, 0, 0))
    with pytest.raises(ValueError):
        build_root_system(2).system("D")
