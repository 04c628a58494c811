from fractions import Fraction

import pytest

from src.lie.liecore import (
    LieAlgebra,
    LieElement,
    NonDiagonalActionError,
    NotAnIdealError,
    UnknownLabelError,
    ideal_closure,
    in_span,
    is_ideal,
    jacobi_check,
    quotient_map,
    span_basis,
    span_dim,
    subalgebra_closure,
    weight_decomposition,
)

SL2 = {
    ("e", "f"): {"h": 1},
    ("h", "e"): {"e": 2},
    ("h", "f"): {"f": -2},
}


def _table_rule(table):
    def rule(a, b):
        if (a, b) in table:
            return table[(a, b)]
        if (b, a) in table:
            return {k: -v for k, v in table[(b, a)].items()}
        return {}

    return rule


def sl2():
    return LieAlgebra.from_rule(["e", "f", "h"], _table_rule(SL2), name="sl2")


def heisenberg():
    return LieAlgebra.from_rule(["x", "y", "z"], _table_rule({("x", "y"): {"z": 1}}), name="heis")


def test_element_arithmetic():
    a = LieElement({"x": 1, "y": Fraction(1, 2)})
    b = LieElement({"x": -1})
    assert (a + b) == LieElement({"y": Fraction(1, 2)})
    assert (a * 2).coeff("y") == 1
    assert (a - a).is_zero()
    assert str(LieElement({"x": 1, "y": -2})) == "x - 2*y"
    assert str(LieElement()) == "0"
    assert LieElement({"x": 0}).support() == ()


def test_sl2_brackets_and_jacobi():
    L = sl2()
    e, f, h = L.e("e"), L.e("f"), L.e("h")
    assert L.bracket(e, f) == h
    assert L.bracket(f, e) == h * -1
    assert L.bracket(h, f) == f * -2
    assert L.bracket(e, e).is_zero()
    assert jacobi_check(L).ok
    assert L.structure_constant_bound() == 2
    assert L.denominators() == (1,)


def test_jacobi_failure_is_reported():
    so3 = LieAlgebra.from_rule(
        ["a", "b", "c"],
        _table_rule({("a", "b"): {"c": 1}, ("b", "c"): {"a": 1}, ("c", "a"): {"b": 1}}),
    )
    assert jacobi_check(so3).ok
    broken = so3.replace_bracket("a", "b", LieElement({"a": 1}))
    result = jacobi_check(broken)
    assert not result.ok
    assert result.triple == ("a", "b", "c")


def test_from_rule_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        LieAlgebra.from_rule(["x", "y"], lambda a, b: {"x": 1} if a != b else {})
    with pytest.raises(UnknownLabelError):
        LieAlgebra.from_rule(["x", "y"], _table_rule({("x", "y"): {"q": 1}}))


def test_evaluate_words():
    L = sl2()
    assignment = {"E": L.e("e"), "F": L.e("f")}
    assert L.evaluate(("E", "F"), assignment) == L.e("h")
    assert L.evaluate((("E", "F"), "E"), assignment) == L.e("e") * 2
    with pytest.raises(UnknownLabelError):
        L.evaluate("G", assignment)
    with pytest.raises(UnknownLabelError):
        L.e("g")


def test_json_round_trip():
    L = sl2()
    data = L.to_json()
    assert data["basis"] == ["e", "f", "h"]
    assert data["brackets"][0] == {"i": 0, "j": 1, "terms": [{"k": 2, "num": 1, "den": 1}]}
    assert LieAlgebra.from_json(data) == L


def test_spans_and_closures():
    H = heisenberg()
    x, y, z = H.e("x"), H.e("y"), H.e("z")
    assert span_dim(H, [x, x * 2, z]) == 2
    assert in_span(H, [x, z], x + z)
    assert not in_span(H, [x, z], y)
    assert span_basis(H, [x + z, z]) == (x, z)
    assert len(subalgebra_closure(H, [x, y])) == 3
    assert len(subalgebra_closure(H, [x])) == 1
    assert ideal_closure(H, [z]) == (z,)
    assert len(ideal_closure(H, [x])) == 2


def test_quotients():
    H = heisenberg()
    x, z = H.e("x"), H.e("z")
    assert is_ideal(H, [z])
    assert not is_ideal(H, [x])
    qm = quotient_map(H, [z])
    assert qm.algebra.basis == ("x", "y")
    assert qm.algebra.dim == 2
    assert qm.project(x + z) == x
    assert qm.algebra.bracket(qm.algebra.e("x"), qm.algebra.e("y")).is_zero()
    with pytest.raises(NotAnIdealError):
        quotient_map(H, [x])


def test_weight_decomposition():
    L = sl2()
    groups = weight_decomposition(L, [L.e("h")])
    assert list(groups) == [(-2,), (0,), (2,)]
    assert groups[(2,)] == (L.e("e"),)
    with pytest.raises(NonDiagonalActionError):
        weight_decomposition(L, [L.e("e")])
