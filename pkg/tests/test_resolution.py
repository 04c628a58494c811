import pytest

from src.homology.resolution import (
    FINITE,
    PERIODIC,
    UNDETERMINED,
    ResolutionUndeterminedError,
    check_d_squared,
    check_minimal,
    default_depth,
    ext_dim_via_complex,
    find_period,
    min_proj_resolution,
    projective,
    projective_cover,
    top_multiplicities,
)
from src.quiver.quiverrep import IndecType, all_indecomposables, build_indec, iso_type

U, V, W = IndecType.U, IndecType.V, IndecType.W


def test_projectives_resolve_trivially():
    for v in range(1, 4):
        res = min_proj_resolution(projective(v, 3), 3)
        assert res.status == FINITE
        assert res.length == 0
        assert res.terms[0] == tuple(1 if w == v else 0 for w in range(1, 4))


def test_projective_cover_of_v1():
    rep = build_indec(V(1), 2)
    assert top_multiplicities(rep) == (1, 0)
    cover, epi = projective_cover(rep)
    assert iso_type(cover) == (U(2, 1),)
    assert epi.is_morphism()
    assert epi.is_surjective()
    kernel, inclusion = epi.kernel()
    assert iso_type(kernel) == (V(2),)
    assert inclusion.is_morphism()
    assert epi.compose(inclusion).is_zero()


def test_simple_at_the_loop_is_periodic():
    res = min_proj_resolution(V(3), 3)
    assert res.status == PERIODIC
    assert res.period == (0, 1)
    assert res.syzygy(7) == (V(3),)
    assert res.term(9) == (0, 0, 1)


def test_v_modules_reach_the_loop_simple():
    res = min_proj_resolution(V(1), 3)
    assert res.status == PERIODIC
    assert res.period == (1, 1)
    assert res.syzygy_types[:2] == ((V(1),), (V(3),))


def test_w_module_has_finite_resolution():
    res = min_proj_resolution(W(1, 1), 2)
    assert res.status == FINITE
    assert res.length == 1
    assert res.syzygy(1) == (U(2, 2),)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_resolutions_are_complexes_and_minimal(n):
    for t in all_indecomposables(n):
        res = min_proj_resolution(t, n)
        assert res.status in (FINITE, PERIODIC)
        assert check_d_squared(res)
        assert check_minimal(res)


def test_undetermined_past_depth():
    res = min_proj_resolution(V(1), 3, max_depth=1)
    assert res.status == UNDETERMINED
    with pytest.raises(ResolutionUndeterminedError):
        res.term(5)


def test_find_period():
    a, b, c = (V(1),), (V(2),), (U(1, 1),)
    assert find_period([a, a, a]) == (0, 1)
    assert find_period([a, b, c, b, c]) == (1, 2)
    assert find_period([a, b]) is None


def test_ext_through_the_hom_complex():
    res = min_proj_resolution(V(2), 2)
    assert ext_dim_via_complex(res, V(2), 0) == 1
    assert ext_dim_via_complex(res, W(1, 1), 0) == 0


def test_default_depth():
    assert default_depth(3) == 10
    with pytest.raises(ValueError):
        projective(4, 3)
