# src/homology/tables.py
"""
Euler tables over all indecomposable pairs.

Cell (column X, row Y) holds <Y, X>_t (which=1) or <Y, X>_1 (which=2), and is
classified against the printed case analysis of the matching table; cells of
table 2 use the values printed for <-,->_1:
    match      computed value equals the single printed value
    mismatch   a single printed value disagrees with the computation
    ambiguous  several printed rules with different values cover the cell
    no-case    no printed rule covers the cell
"""

import io
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import pandas as pd
from sympy import latex

from src.homology.case_law import printed_cases
from src.homology.euler_series import EulerSeries, euler_series, symmetrization_check
from src.homology.resolution import ResolutionUndeterminedError
from src.quiver.quiverrep import IndecType, all_indecomposables, check_rank
from src.utils.field import to_rational

logger = logging.getLogger(__name__)

MATCH = "match"
MISMATCH = "mismatch"
AMBIGUOUS = "ambiguous"
NO_CASE = "no-case"

COLUMNS = [
    "col_type",
    "row_type",
    "numerator_coeffs",
    "denominator_coeffs",
    "value_at_1_num",
    "value_at_1_den",
    "case",
    "status",
]


@dataclass(frozen=True)
class TableCell:
    col: IndecType
    row: IndecType
    series: EulerSeries
    case: str
    status: str
    printed: Optional[str] = None

    @property
    def value_at_1(self) -> Fraction:
        return self.series.at_one()

    def to_row(self) -> dict:
        out = {"col_type": self.col.label, "row_type": self.row.label}
        out.update(self.series.to_dict())
        out["case"] = self.case
        out["status"] = self.status
        return out


@dataclass
class EulerTable:
    which: int
    n: int
    cells: List[TableCell] = field(default_factory=list)
    symmetrization_failures: List[Tuple[str, str]] = field(default_factory=list)
    undetermined: List[Tuple[str, str]] = field(default_factory=list)

    def cell(self, col: IndecType, row: IndecType) -> TableCell:
        for c in self.cells:
            if c.col == col and c.row == row:
                return c
        raise KeyError(f"no cell at column {col.label}, row {row.label}")

    @property
    def findings(self) -> List[TableCell]:
        return [c for c in self.cells if c.status != MATCH]

    def counts(self) -> Dict[str, int]:
        out = {MATCH: 0, MISMATCH: 0, AMBIGUOUS: 0, NO_CASE: 0}
        for c in self.cells:
            out[c.status] += 1
        return out

    def to_json_rows(self) -> List[dict]:
        return [c.to_row() for c in self.cells]

    def to_dataframe(self) -> pd.DataFrame:
        rows = []
        for r in self.to_json_rows():
            r = dict(r)
            r["numerator_coeffs"] = " ".join(str(c) for c in r["numerator_coeffs"])
            r["denominator_coeffs"] = " ".join(str(c) for c in r["denominator_coeffs"])
            rows.append(r)
        return pd.DataFrame(rows, columns=COLUMNS)

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.to_dataframe().to_csv(buf, index=False, lineterminator="\n")
        return buf.getvalue()

    def to_latex(self) -> str:
        mods = all_indecomposables(self.n)
        lookup = {(c.col, c.row): c for c in self.cells}
        lines = [
            "\\begin{tabular}{l" + "c" * len(mods) + "}",
            " & ".join([""] + [f"${m.label}$" for m in mods]) + " \\\\",
            "\\hline",
        ]
        for row in mods:
            entries = [f"${row.label}$"]
            for col in mods:
                cell = lookup.get((col, row))
                if cell is None:
                    entries.append("?")
                elif self.which == 1:
                    entries.append(f"${latex(cell.series.to_expr())}$")
                else:
                    entries.append(f"${latex(to_rational(cell.value_at_1))}$")
            lines.append(" & ".join(entries) + " \\\\")
        lines.append("\\end{tabular}")
        return "\n".join(lines) + "\n"


def _classify(which: int, computed: EulerSeries, row: IndecType, col: IndecType, n: int):
    matches = printed_cases(row, col, n, which)
    if not matches:
        return "", NO_CASE, None
    values = {m.value for m in matches}
    actual = computed if which == 1 else computed.at_one()
    names = "; ".join(m.name for m in matches)
    if len(values) > 1:
        return names, AMBIGUOUS, ", ".join(sorted(str(v) for v in values))
    printed = next(iter(values))
    return names, (MATCH if printed == actual else MISMATCH), str(printed)


def generate_table(which: int, n: int, max_depth: Optional[int] = None) -> EulerTable:
    if which not in (1, 2):
        raise ValueError(f"table must be 1 or 2, got {which}")
    check_rank(n)
    mods = all_indecomposables(n)
    table = EulerTable(which=which, n=n)
    for row in mods:
        for col in mods:
            try:
                series = euler_series(row, col, n, max_depth)
            except ResolutionUndeterminedError:
                logger.warning("table %d n=%d: resolution of %s undetermined", which, n, row.label)
                table.undetermined.append((col.label, row.label))
                continue
            case, status, printed = _classify(which, series, row, col, n)
            cell = TableCell(col=col, row=row, series=series, case=case, status=status, printed=printed)
            if status != MATCH:
                logger.debug(
                    "table %d n=%d column %s row %s: computed %s, printed %s (%s)",
                    which, n, col.label, row.label, series, printed, status,
                )
            table.cells.append(cell)
    if table.undetermined:
        return table
    for a in mods:
        for b in mods:
            if a <= b:
                if not symmetrization_check(a, b, n).ok:
                    table.symmetrization_failures.append((a.label, b.label))
    counts = table.counts()
    logger.info("table %d n=%d: %s", which, n, counts)
    if counts[MISMATCH]:
        logger.warning(
            "table %d n=%d: %d cells disagree with the printed case analysis",
            which, n, counts[MISMATCH],
        )
    return table
