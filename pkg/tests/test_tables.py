from fractions import Fraction

import pytest

from src.homology import case_law
from src.homology.case_law import (
    GEOMETRIC,
    GEOMETRIC_TAIL,
    MINUS_T,
    at_one_disagreements,
    printed_cases,
    row_block,
)
from src.homology.euler_series import EulerSeries
from src.homology.tables import COLUMNS, MATCH, MISMATCH, generate_table
from src.quiver.quiverrep import IndecType, all_indecomposables

U, V, W = IndecType.U, IndecType.V, IndecType.W


def test_row_blocks():
    assert row_block(U(3, 1), 3)[0] == "U(l,k) k<=l=n"
    assert row_block(U(2, 1), 3)[0] == "U(l,k) k<=l<n"
    assert row_block(U(1, 2), 3)[0] == "U(l,k) l<k<=n"
    assert row_block(V(2), 3)[0] == "V(l)"
    assert row_block(W(1, 2), 3)[0] == "W(l,k)"


def test_printed_cases_for_v_rows():
    (case,) = printed_cases(V(2), V(1), 3)
    assert case.value == GEOMETRIC
    (case,) = printed_cases(V(1), V(2), 3)
    assert case.value == GEOMETRIC_TAIL


def test_otherwise_applies_only_without_explicit_rule():
    cases = printed_cases(W(2, 2), W(1, 1), 3)
    assert [c.name.split(" | ")[-1] for c in cases] == ["otherwise"]
    cases = printed_cases(W(1, 1), U(2, 3), 3)
    assert all(c.value == MINUS_T for c in cases)


def test_printed_values_at_one():
    (case,) = printed_cases(V(2), V(1), 3, which=2)
    assert case.value == Fraction(1, 2)
    (case,) = printed_cases(V(1), V(2), 3, which=2)
    assert case.value == Fraction(-1, 2)
    cases = printed_cases(W(1, 1), U(2, 3), 3, which=2)
    assert all(c.value == -1 for c in cases)
    with pytest.raises(ValueError):
        printed_cases(V(1), V(1), 3, which=3)


def test_printed_tables_agree_at_one():
    assert at_one_disagreements() == []


def test_table_two_uses_its_own_printed_values(monkeypatch):
    wrong = (Fraction(1), Fraction(-1, 2))
    monkeypatch.setitem(case_law._AT_ONE["V(l)"], "V", wrong)
    table = generate_table(2, 2)
    flagged = sorted((c.col.label, c.row.label) for c in table.findings)
    assert flagged == [("V(1)", "V(1)"), ("V(1)", "V(2)"), ("V(2)", "V(2)")]
    assert all(c.status == MISMATCH for c in table.findings)
    assert generate_table(1, 2).findings == []


def test_table_one_small_rank():
    table = generate_table(1, 2)
    assert len(table.cells) == 49
    assert sum(table.counts().values()) == 49
    assert table.symmetrization_failures == []
    assert table.undetermined == []
    assert str(table.cell(V(1), V(2)).series) == "1/(1+t)"
    assert str(table.cell(V(2), V(1)).series) == "-t/(1+t)"
    assert table.cell(V(1), V(2)).status == MATCH


def test_table_two_values():
    table = generate_table(2, 3)
    cell = table.cell(V(1), V(2))
    assert cell.value_at_1 == Fraction(1, 2)
    assert cell.status == MATCH
    assert table.cell(U(2, 3), W(1, 1)).series == EulerSeries((0, -1))
    assert table.cell(U(2, 3), W(1, 1)).status == MATCH


def test_serializers():
    table = generate_table(1, 2)
    rows = table.to_json_rows()
    assert len(rows) == 49
    assert list(rows[0]) == COLUMNS
    csv = table.to_csv()
    lines = csv.strip("\n").split("\n")
    assert lines[0] == ",".join(COLUMNS)
    assert len(lines) == 50


def test_latex_layout_rank_three():
    tex = generate_table(1, 3).to_latex()
    lines = tex.strip("\n").split("\n")
    assert lines[0] == "\\begin{tabular}{l" + "c" * 15 + "}"
    assert lines[-1] == "\\end{tabular}"
    body = [ln for ln in lines if ln.endswith("\\\\")]
    assert len(body) == 16
    assert all(ln.count("&") == 15 for ln in body)


def test_rank_four_v_block():
    table = generate_table(1, 4)
    assert len(table.cells) == 26 * 26
    assert table.symmetrization_failures == []
    vs = [t for t in all_indecomposables(4) if t.kind == "V"]
    for col in vs:
        for row in vs:
            cell = table.cell(col, row)
            assert cell.status == MATCH
            assert cell.series == (GEOMETRIC if col.i <= row.i else GEOMETRIC_TAIL)


def test_rank_four_table_matches_everywhere():
    table = generate_table(1, 4)
    assert table.counts()[MATCH] == 676
    assert table.findings == []
    assert table.symmetrization_failures == []
    assert table.undetermined == []


@pytest.mark.parametrize("which", [0, 3])
def test_bad_table_number(which):
    with pytest.raises(ValueError):
        generate_table(which, 2)
