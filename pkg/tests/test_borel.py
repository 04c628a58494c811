import pytest

from src.lie.borel import (
    ModelRelationError,
    build_borel,
    cartan_entry,
    check_relations,
    generator_matrices,
    mixed_relation_instances,
    model_words,
    quotient_iso_check,
    relation_instances,
    root_space_basis,
)
from src.lie.liecore import LieAlgebra, jacobi_check
from src.roots.rootsys import InvalidRankError, build_root_system


def _self_assignment(kind, q, n):
    out = {}
    for i in range(1, n + 1):
        if kind == "C" and i == n:
            out[f"x'{n}"] = q.e(f"x'({n},{n})")
            out[f"h'{n}"] = q.e(f"h'{n}")
        else:
            out[f"x{i}"] = q.e(f"x({i},{i})")
            out[f"h{i}"] = q.e(f"h{i}")
    return out


def test_cartan_entries():
    assert cartan_entry("B", 2, 1, 2) == -2
    assert cartan_entry("B", 1, 2, 2) == -1
    assert cartan_entry("C", 1, 2, 2) == -2
    assert cartan_entry("C", 2, 1, 2) == -1
    assert cartan_entry("B", 1, 3, 3) == 0
    assert cartan_entry("C", 3, 3, 3) == 2


def test_relation_counts():
    assert len(relation_instances("B", 2)) == 1 + 4 + 2
    assert len(relation_instances("C", 3)) == 3 + 9 + 6
    assert len(mixed_relation_instances(1)) == 1
    assert len(mixed_relation_instances(3)) == 2


@pytest.mark.parametrize("kind", ["B", "C"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_models(kind, n):
    model = build_borel(kind, n)
    assert model.dim == n * n + n
    assert len(model_words(kind, n)) == n * n + n
    assert model.size == (2 * n + 1 if kind == "B" else 2 * n)
    assert all(holds for _, _, holds in check_relations(model))
    for m in model.basis:
        assert m.is_upper
        assert model.in_ambient(m)
    assert set(root_space_basis(model)) == set(build_root_system(n).system(f"{kind}+"))


@pytest.mark.parametrize("kind", ["B", "C"])
def test_generators_lie_in_the_ambient_algebra(kind):
    model = build_borel(kind, 3)
    for _, g in generator_matrices(kind, 3).items():
        assert model.in_ambient(g)


@pytest.mark.parametrize("kind", ["B", "C"])
def test_structure_constants_and_self_iso(kind):
    model = build_borel(kind, 2)
    q = model.to_lie_algebra()
    assert q.dim == 6
    assert jacobi_check(q).ok
    assert quotient_iso_check(q, model, _self_assignment(kind, q, 2)).ok


def test_iso_check_negative_cases():
    model = build_borel("B", 2)
    flat = LieAlgebra.abelian(model.labels)
    report = quotient_iso_check(flat, model, _self_assignment("B", flat, 2))
    assert not report.ok
    assert "dependent" in report.witness
    other = build_borel("C", 2).to_lie_algebra()
    report = quotient_iso_check(other, model, _self_assignment("C", other, 2))
    assert not report.ok


def test_bad_arguments():
    with pytest.raises(ValueError):
        build_borel("D", 2)
    with pytest.raises(InvalidRankError):
        build_borel("B", 0)
    assert issubclass(ModelRelationError, AssertionError)
