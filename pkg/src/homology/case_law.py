# src/homology/case_law.py
"""
Closed-form case analysis of <row, column>_t and <row, column>_1 over the
indecomposables, as printed in the two reference Euler tables. Each rule is a
predicate on the row indices (l, k) and column indices (i, j) together with
the printed <-,->_t value; the printed <-,->_1 values are kept separately.

A cell may match zero rules (no printed case), one rule, or several rules
with different values (ambiguous print). "otherwise" rules apply only when no
explicit rule of the block matched.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple, Union

from src.homology.euler_series import EulerSeries
from src.quiver.quiverrep import IndecType

Pred = Callable[[int, int, int, int], bool]

ZERO = EulerSeries((0,))
ONE = EulerSeries((1,))
TWO = EulerSeries((2,))
MINUS_T = EulerSeries((0, -1))
MINUS_2T = EulerSeries((0, -2))
ONE_MINUS_T = EulerSeries((1, -1))
ONE_MINUS_2T = EulerSeries((1, -2))
TWO_MINUS_T = EulerSeries((2, -1))
GEOMETRIC = EulerSeries((1,), (1, 1))
GEOMETRIC_TAIL = EulerSeries((0, -1), (1, 1))


@dataclass(frozen=True)
class CaseRule:
    name: str
    pred: Pred
    value: EulerSeries
    otherwise: bool = False


def _rules(*items) -> Tuple[CaseRule, ...]:
    return tuple(CaseRule(name, pred, value) for name, pred, value in items)


def _otherwise(value: EulerSeries = ZERO) -> CaseRule:
    return CaseRule("otherwise", lambda i, j, l, k: True, value, otherwise=True)


def _fractions(*values: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


# Row U(l,k) with k <= l < n.
_U_LOW = {
    "U": _rules(
        ("l<min(i,j)", lambda i, j, l, k: l < min(i, j), MINUS_2T),
        ("k<j<=l<i", lambda i, j, l, k: k < j <= l < i, MINUS_T),
        ("k<i<=l<j", lambda i, j, l, k: k < i <= l < j, MINUS_T),
        ("k<i<=j<=l", lambda i, j, l, k: k < i <= j <= l, ZERO),
        ("k<j<i<=l", lambda i, j, l, k: k < j < i <= l, ZERO),
        ("j<=k<=l<i", lambda i, j, l, k: j <= k <= l < i, ZERO),
        ("j<=k<i<=l", lambda i, j, l, k: j <= k < i <= l, ONE),
        ("i<=k<=l<j", lambda i, j, l, k: i <= k <= l < j, ONE_MINUS_T),
        ("i<=k<j<=l", lambda i, j, l, k: i <= k < j <= l, ONE),
        ("max(i,j)<=k", lambda i, j, l, k: max(i, j) <= k, TWO),
    ),
    "V": _rules(
        ("k<=l<i", lambda i, j, l, k: k <= l < i, MINUS_T),
        ("k<i<=l", lambda i, j, l, k: k < i <= l, ZERO),
        ("i<=k<=l", lambda i, j, l, k: i <= k <= l, ONE),
    ),
    "W": _rules(
        ("k<i<=l<=j", lambda i, j, l, k: k < i <= l <= j, ONE),
        ("i<=k<=l<=j", lambda i, j, l, k: i <= k <= l <= j, TWO),
        ("i<=k<=j<l", lambda i, j, l, k: i <= k <= j < l, ONE),
    )
    + (_otherwise(),),
}

# Row U(l,k) with l < k <= n.
_U_HIGH = {
    "U": _rules(
        ("k<min(i,j)", lambda i, j, l, k: k < min(i, j), MINUS_2T),
        ("l<j<=k<i", lambda i, j, l, k: l < j <= k < i, MINUS_T),
        ("l<i<=k<j", lambda i, j, l, k: l < i <= k < j, ONE_MINUS_2T),
        ("l<i<=j<=k", lambda i, j, l, k: l < i <= j <= k, ONE_MINUS_T),
        ("l<j<i<=k", lambda i, j, l, k: l < j < i <= k, ONE_MINUS_T),
        ("j<=l<k<i", lambda i, j, l, k: j <= l < k < i, ZERO),
        ("j<=l<i<=k", lambda i, j, l, k: j <= l < i <= k, ONE),
        ("i<=l<k<j", lambda i, j, l, k: i <= l < k < j, ONE_MINUS_T),
        ("i<=l<j<=k", lambda i, j, l, k: i <= l < j <= k, TWO_MINUS_T),
        ("max(i,j)<=l", lambda i, j, l, k: max(i, j) <= l, TWO),
    ),
    "V": _rules(
        ("l<k<i", lambda i, j, l, k: l < k < i, MINUS_T),
        ("l<i<=k", lambda i, j, l, k: l < i <= k, ONE_MINUS_T),
        ("i<=l<k", lambda i, j, l, k: i <= l < k, ONE),
    ),
    "W": _rules(
        ("l<i<=k<=j", lambda i, j, l, k: l < i <= k <= j, ONE),
        ("i<=l<k<=j", lambda i, j, l, k: i <= l < k <= j, TWO),
        ("i<=l<=j<k", lambda i, j, l, k: i <= l <= j < k, ONE),
    )
    + (_otherwise(),),
}

# Row U(n,k), the projectives.
_U_TOP = {
    "U": _rules(
        ("k<min(i,j)", lambda i, j, l, k: k < min(i, j), ZERO),
        ("j<=k<i", lambda i, j, l, k: j <= k < i, ONE),
        ("i<=k<j", lambda i, j, l, k: i <= k < j, ONE),
        ("max(i,j)<=k", lambda i, j, l, k: max(i, j) <= k, TWO),
    ),
    "V": _rules(
        ("k<i", lambda i, j, l, k: k < i, ZERO),
        ("i<=k", lambda i, j, l, k: i <= k, ONE),
    ),
    "W": _rules(("i<=k<=j", lambda i, j, l, k: i <= k <= j, ONE)) + (_otherwise(),),
}

# Row V(l); k is unused.
_V = {
    "U": _rules(
        ("l<min(i,j)", lambda i, j, l, k: l < min(i, j), MINUS_T),
        ("j<=l<i", lambda i, j, l, k: j <= l < i, ZERO),
        ("i<=l<j", lambda i, j, l, k: i <= l < j, ONE_MINUS_T),
        ("max(i,j)<=l", lambda i, j, l, k: max(i, j) <= l, ONE),
    ),
    "V": _rules(
        ("i<=l", lambda i, j, l, k: i <= l, GEOMETRIC),
        ("l<i", lambda i, j, l, k: l < i, GEOMETRIC_TAIL),
    ),
    "W": _rules(("i<=l<=j", lambda i, j, l, k: i <= l <= j, ONE)) + (_otherwise(),),
}

# Row W(l,k) with l <= k < n; the printed cases use k+1.
_W = {
    "U": _rules(
        ("l<k+1<min(i,j)", lambda i, j, l, k: l < k + 1 < min(i, j), ZERO),
        ("l<j<=k+1<i", lambda i, j, l, k: l < j <= k + 1 < i, MINUS_T),
        ("l<i<=k+1<j", lambda i, j, l, k: l < i <= k + 1 < j, MINUS_T),
        ("l<i<=j<=k+1", lambda i, j, l, k: l < i <= j <= k + 1, MINUS_2T),
        ("l<j<i<=k+1", lambda i, j, l, k: l < j < i <= k + 1, MINUS_2T),
        ("j<=l<k+1<i", lambda i, j, l, k: j <= l < k + 1 < i, ZERO),
        ("j<=l<i<=k+1", lambda i, j, l, k: j <= l < i <= k + 1, MINUS_T),
        ("i<=l<k+1<j", lambda i, j, l, k: i <= l < k + 1 < j, ZERO),
        ("i<=l<j<=k+1", lambda i, j, l, k: i <= l < j <= k + 1, MINUS_T),
        ("max(i,j)<=l", lambda i, j, l, k: max(i, j) <= l, ZERO),
    ),
    "V": _rules(
        ("l<k+1<i", lambda i, j, l, k: l < k + 1 < i, ZERO),
        ("l<i<=k+1", lambda i, j, l, k: l < i <= k + 1, MINUS_T),
        ("i<=l<k+1", lambda i, j, l, k: i <= l < k + 1, ZERO),
    ),
    "W": _rules(
        ("i<=l<=j<k+1", lambda i, j, l, k: i <= l <= j < k + 1, ONE),
        ("l<i<=k+1<=j", lambda i, j, l, k: l < i <= k + 1 <= j, MINUS_T),
        ("i<=l<k+1<=j", lambda i, j, l, k: i <= l < k + 1 <= j, ZERO),
    )
    + (_otherwise(),),
}


# Values of <row, column>_1 as printed in the second table. The case
# conditions there are the same as above; values are listed in rule order,
# the "otherwise" rule last.
_AT_ONE: Dict[str, Dict[str, Tuple[Fraction, ...]]] = {
    "U(l,k) k<=l<n": {
        "U": _fractions(-2, -1, -1, 0, 0, 0, 1, 0, 1, 2),
        "V": _fractions(-1, 0, 1),
        "W": _fractions(1, 2, 1, 0),
    },
    "U(l,k) l<k<=n": {
        "U": _fractions(-2, -1, -1, 0, 0, 0, 1, 0, 1, 2),
        "V": _fractions(-1, 0, 1),
        "W": _fractions(1, 2, 1, 0),
    },
    "U(l,k) k<=l=n": {
        "U": _fractions(0, 1, 1, 2),
        "V": _fractions(0, 1),
        "W": _fractions(1, 0),
    },
    "V(l)": {
        "U": _fractions(-1, 0, 0, 1),
        "V": (Fraction(1, 2), Fraction(-1, 2)),
        "W": _fractions(1, 0),
    },
    "W(l,k)": {
        "U": _fractions(0, -1, -1, -2, -2, 0, -1, 0, -1, 0),
        "V": _fractions(0, -1, 0),
        "W": _fractions(1, -1, 0, 0),
    },
}


def row_block(row: IndecType, n: int) -> Tuple[str, Dict[str, Tuple[CaseRule, ...]]]:
    if row.kind == "V":
        return "V(l)", _V
    if row.kind == "W":
        return "W(l,k)", _W
    l, k = row.i, row.j
    if l == n:
        return "U(l,k) k<=l=n", _U_TOP
    if k <= l:
        return "U(l,k) k<=l<n", _U_LOW
    return "U(l,k) l<k<=n", _U_HIGH


@dataclass(frozen=True)
class CaseMatch:
    name: str
    value: Union[EulerSeries, Fraction]


def printed_cases(row: IndecType, col: IndecType, n: int, which: int = 1) -> List[CaseMatch]:
    """
    All printed rules that cover the cell (column col, row row). which=1 gives
    the <-,->_t values, which=2 the separately printed <-,->_1 values.
    """
    if which not in (1, 2):
        raise ValueError(f"table must be 1 or 2, got {which}")
    block_name, block = row_block(row, n)
    rules = block[col.kind]
    at_one = _AT_ONE[block_name][col.kind]
    l, k = row.i, row.j
    i, j = col.i, col.j
    picked = [(r, v) for r, v in zip(rules, at_one) if not r.otherwise and r.pred(i, j, l, k)]
    if not picked:
        picked = [(r, v) for r, v in zip(rules, at_one) if r.otherwise]
    prefix = f"{block_name} | {col.kind} | "
    return [CaseMatch(prefix + r.name, r.value if which == 1 else v) for r, v in picked]


def at_one_disagreements() -> List[str]:
    """Rules whose printed <-,->_1 value is not their <-,->_t value at t = 1."""
    out = []
    for block_name, block in (
        ("U(l,k) k<=l<n", _U_LOW),
        ("U(l,k) l<k<=n", _U_HIGH),
        ("U(l,k) k<=l=n", _U_TOP),
        ("V(l)", _V),
        ("W(l,k)", _W),
    ):
        for kind, rules in block.items():
            values = _AT_ONE[block_name][kind]
            if len(values) != len(rules):
                out.append(f"{block_name} | {kind} | {len(values)} values for {len(rules)} rules")
                continue
            for rule, value in zip(rules, values):
                if rule.value.at_one() != value:
                    out.append(f"{block_name} | {kind} | {rule.name}")
    return out
