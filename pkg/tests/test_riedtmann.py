from fractions import Fraction

import pytest

from src.lie.liecore import LieElement, jacobi_check
from src.lie.riedtmann import (
    basis_words,
    borel_subalgebra_check,
    bracket_table_latex,
    build_L,
    build_LTilde,
    cartan_decomposition_check,
    expected_images,
    generation_check,
    generator_assignment,
    ideal_generation_check,
    ideal_quotient_check,
    ideal_spans,
    indec_bracket,
    integrality_check,
    bc_sum_check,
    phi_images,
    recover_in_phi_basis,
    run_lie_suite,
    structure_check,
    verify_bracket_oracle,
    verify_presentation,
)
from src.quiver.quiverrep import IndecType

U, V, W = IndecType.U, IndecType.V, IndecType.W


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dimensions(n):
    assert build_L(n).dim == (3 * n * n + n) // 2
    assert build_LTilde(n).algebra.dim == (3 * n * n + 3 * n) // 2
    assert len(basis_words(n)) == (3 * n * n + 3 * n) // 2


def test_indecomposable_brackets():
    assert indec_bracket(W(1, 1), U(2, 2)) == {"U(1,2)": 1, "U(2,1)": 1}
    assert indec_bracket(U(2, 2), W(1, 1)) == {"U(1,2)": -1, "U(2,1)": -1}
    assert indec_bracket(W(1, 1), V(2)) == {"V(1)": 1}
    assert indec_bracket(V(1), V(2)) == {"U(2,1)": 1, "U(1,2)": -1}
    assert indec_bracket(W(1, 1), W(2, 2)) == {"W(1,2)": 1}
    assert indec_bracket(U(1, 2), V(1)) == {}


def test_cartan_action():
    lt = build_LTilde(2)
    # (S_2, S'_2)_A = 2, so [h(2), U(2,2)] = 2 U(2,2)
    assert lt.pairing(2, U(2, 2)) == 2
    assert lt.algebra.bracket(lt.h(2), lt.module(U(2, 2))) == lt.module(U(2, 2)) * 2
    assert lt.algebra.bracket(lt.h(1), lt.h(2)).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_jacobi(n):
    assert jacobi_check(build_L(n)).ok
    assert jacobi_check(build_LTilde(n).algebra).ok
    assert structure_check(n).ok


def test_structure_check_records_cartan_action():
    records = [r for r in structure_check(2).records if r.check_id == "h_antisymmetry"]
    assert len(records) == 1
    assert records[0].instance == "n=2"
    assert records[0].computed == []
    assert records[0].status == "pass"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_presentation_and_generation(n):
    assert verify_presentation(n).ok
    assert generation_check(n).ok


def test_generator_assignment_names():
    a = generator_assignment(2)
    assert sorted(a) == ["h'2", "h1", "h2", "x'2", "x1", "x2"]
    assert a["h2"] == a["h'2"] * 2
    assert a["x'2"] == LieElement({"U(2,2)": 1})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi_images_and_integrality(n):
    phi = phi_images(n)
    expected = expected_images(n)
    for label in phi.labels:
        assert phi.image(label) == expected[label]
    assert abs(phi.determinant) == 2 ** (n * (n - 1) // 2 + n)
    assert integrality_check(n).ok


def test_inverse_has_power_of_two_denominators():
    recovered = recover_in_phi_basis(2)
    assert recovered["U(1,2)"] == {"[x(1,2),x(2,2)]": Fraction(-1, 2), "x'(1,2)": Fraction(1, 2)}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_cartan_decomposition(n):
    assert cartan_decomposition_check(n).ok


@pytest.mark.parametrize("n", [2, 3])
def test_ideals_and_quotients(n):
    first, second = ideal_spans(n)
    assert len(first) == n * (n + 1) // 2
    assert len(second) == n * (n + 1) // 2
    report = ideal_quotient_check(n)
    assert report.ok, [r for r in report.failures()]
    assert ideal_generation_check(n).ok


@pytest.mark.parametrize("kind", ["B", "C"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_borel_subalgebras(kind, n):
    assert borel_subalgebra_check(kind, n).ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bc_sum(n):
    assert bc_sum_check(n).ok


def test_oracle_agrees_with_structure_constants():
    report = verify_bracket_oracle(2)
    assert len(report.records) == 49
    assert report.ok


def test_bracket_table_latex():
    tex = bracket_table_latex(2)
    assert tex.startswith("\\begin{tabular}{lll}")
    assert "$U(2,2)$ & $W(1,1)$" in tex


def test_lie_suite_rank_two():
    report = run_lie_suite(2)
    assert report.ok
    assert report.exit_status() == 0
