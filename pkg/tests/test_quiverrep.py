from fractions import Fraction

import pytest
from sympy import ImmutableMatrix

from src.quiver.quiverrep import (
    FieldMismatchError,
    IndecType,
    InvalidIndecError,
    RelationError,
    Rep,
    all_indecomposables,
    build_indec,
    build_module,
    cartan_matrix,
    dim_vector,
    form_matrix,
    form_of,
    gabriel_root,
    hom_dim,
    indec_fingerprint,
    indec_hom_dim,
    is_invariant,
    is_isomorphic,
    iso_type,
    quotient_representation,
    simple,
    simple_prime,
    subrepresentation,
)
from src.roots.rootsys import InvalidRankError, Root, inner
from src.utils.field import get_field

U, V, W = IndecType.U, IndecType.V, IndecType.W


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_indecomposable_count(n):
    assert len(all_indecomposables(n)) == (3 * n * n + n) // 2


def test_rank_one_and_ordering():
    assert [t.label for t in all_indecomposables(1)] == ["U(1,1)", "V(1)"]
    labels = [t.label for t in all_indecomposables(2)]
    assert labels == ["U(1,1)", "U(1,2)", "U(2,1)", "U(2,2)", "V(1)", "V(2)", "W(1,1)"]


def test_parse_and_validate():
    assert IndecType.parse("U(2,3)") == U(2, 3)
    assert IndecType.parse(" V( 4 ) ") == V(4)
    for bad in ("X(1)", "V(1,2)", "W(3)", "U()"):
        with pytest.raises(InvalidIndecError):
            IndecType.parse(bad)
    with pytest.raises(InvalidIndecError):
        W(2, 2).validate(2)
    with pytest.raises(InvalidIndecError):
        U(0, 1).validate(3)
    with pytest.raises(InvalidRankError):
        all_indecomposables(0)


def test_dimension_vectors():
    assert dim_vector(U(2, 3), 3) == (0, 1, 2)
    assert dim_vector(U(3, 1), 3) == (1, 1, 2)
    assert dim_vector(U(2, 2), 3) == (0, 2, 2)
    assert dim_vector(V(2), 3) == (0, 1, 1)
    assert dim_vector(W(1, 2), 3) == (1, 1, 0)


def test_gabriel_roots():
    assert gabriel_root(U(1, 3), 3) == Root((1, 0, 1))
    assert gabriel_root(U(3, 1), 3) == Root((1, 0, 1))
    assert gabriel_root(U(2, 2), 3) == Root((0, 2, 0))
    assert gabriel_root(V(2), 3) == Root((0, 1, 0))
    assert gabriel_root(W(1, 1), 3) == Root((1, -1, 0))


def test_simples():
    assert simple(1, 3) == W(1, 1)
    assert simple(3, 3) == V(3)
    assert simple_prime(3) == U(3, 3)
    assert dim_vector(simple_prime(3), 3) == (0, 0, 2)


def test_constructed_modules_respect_the_relation():
    for t in all_indecomposables(3):
        rep = build_indec(t, 3)
        assert rep.dims == dim_vector(t, 3)
        loop = rep.maps[-1]
        assert (loop * loop).is_zero_matrix


def test_rep_rejects_bad_loop():
    with pytest.raises(RelationError):
        Rep(dims=(1,), maps=(ImmutableMatrix([[1]]),))
    with pytest.raises(RelationError):
        Rep(dims=(1, 1), maps=(ImmutableMatrix([[1, 0]]), ImmutableMatrix([[0]])))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hom_from_projectives_reads_dimensions(n):
    for t in all_indecomposables(n):
        d = dim_vector(t, n)
        for v in range(1, n + 1):
            assert indec_hom_dim(U(n, v), t, n) == d[v - 1]


def test_endomorphisms_of_small_modules():
    assert indec_hom_dim(V(2), V(2), 2) == 1
    assert indec_hom_dim(U(2, 2), U(2, 2), 2) == 2
    assert indec_hom_dim(W(1, 1), V(2), 2) == 0


def test_hom_over_different_fields():
    with pytest.raises(FieldMismatchError):
        hom_dim(build_indec(V(1), 2, 0), build_indec(V(1), 2, 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_indecomposables_have_distinct_fingerprints(n):
    mods = all_indecomposables(n)
    assert len(mods) == (3 * n * n + n) // 2
    assert len({indec_fingerprint(t, n) for t in mods}) == len(mods)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hom_dims_agree_across_fields(n):
    mods = all_indecomposables(n)
    for a in mods:
        for b in mods:
            assert len({indec_hom_dim(a, b, n, order) for order in (0, 2, 3)}) == 1


def test_iso_type_of_direct_sum():
    rep = build_module([V(1), U(1, 2)], 3)
    assert iso_type(rep) == (U(1, 2), V(1))
    assert is_isomorphic(rep, build_module([U(1, 2), V(1)], 3))
    assert not is_isomorphic(build_indec(U(1, 2), 2), build_indec(U(2, 1), 2))


@pytest.mark.parametrize("order", [0, 2, 3])
def test_iso_type_of_indecomposables(order):
    for t in all_indecomposables(2):
        assert iso_type(build_indec(t, 2, order)) == (t,)


def test_cartan_matrix_and_form():
    assert cartan_matrix(2).tolist() == [[1, 0], [2, 2]]
    g = form_matrix(2)
    assert all(g[a][b] == g[b][a] for a in range(2) for b in range(2))
    assert form_of(V(2), V(2), 2) == 1
    assert form_of(W(1, 1), W(1, 1), 2) == 2
    assert form_of(U(2, 2), U(2, 2), 2) == 4


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_form_matches_root_inner_product(n):
    mods = all_indecomposables(n)
    for a in mods:
        for b in mods:
            assert form_of(a, b, n) == inner(gabriel_root(a, n), gabriel_root(b, n))


def test_sub_and_quotient():
    fld = get_field(0)
    rep = build_indec(U(2, 2), 2)
    # the socle: image of the loop at vertex 2
    bases = (fld.zeros(0, 0), fld.from_rows([[0], [1]]))
    assert is_invariant(rep, bases)
    sub = subrepresentation(rep, bases)
    quo, _ = quotient_representation(rep, bases)
    assert iso_type(sub) == (V(2),)
    assert iso_type(quo) == (V(2),)
    assert not is_invariant(rep, (fld.zeros(0, 0), fld.from_rows([[1], [0]])))
