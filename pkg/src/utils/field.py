# src/utils/field.py
"""
Exact field layer shared by the quiver, homology and Lie modules.

ExactField(0) is the rationals, ExactField(p) the prime field F_p.
Matrices are sympy ImmutableMatrix values; over F_p every entry is kept
reduced to 0..p-1. Rank and row reduction go through sympy's DomainMatrix.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from sympy import GF, QQ, ImmutableMatrix, Rational
from sympy.polys.matrices import DomainMatrix

SUPPORTED_ORDERS = (0, 2, 3, 5, 7)


def to_fraction(x) -> Fraction:
    """sympy Rational/Integer (or int/Fraction) -> Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) or hasattr(x, "__index__"):
        return Fraction(int(x))
    return Fraction(int(x.p), int(x.q))


def to_rational(x) -> Rational:
    x = Fraction(x)
    return Rational(x.numerator, x.denominator)


class ExactField:
    """Rationals (order 0) or F_p."""

    def __init__(self, order: int = 0):
        if order not in SUPPORTED_ORDERS:
            raise ValueError(
                f"unsupported field order {order} (expected one of {SUPPORTED_ORDERS})"
            )
        self.order = int(order)
        self.domain = QQ if self.order == 0 else GF(self.order)

    @property
    def name(self) -> str:
        return "QQ" if self.order == 0 else f"GF({self.order})"

    def __repr__(self) -> str:
        return f"ExactField({self.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("ExactField", self.order))

    # -- construction -------------------------------------------------

    def element(self, x):
        if self.order == 0:
            return to_rational(to_fraction(x))
        x = to_fraction(x)
        if x.denominator != 1:
            # 1/d in F_p
            inv = pow(x.denominator, -1, self.order)
            return Rational((x.numerator * inv) % self.order)
        return Rational(x.numerator % self.order)

    def matrix(self, rows: int, cols: int, entries: Sequence = ()) -> ImmutableMatrix:
        entries = list(entries)
        if not entries:
            return ImmutableMatrix.zeros(rows, cols)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        return ImmutableMatrix(rows, cols, [self.element(e) for e in entries])

    def from_rows(self, rows: Sequence[Sequence], cols: int = None) -> ImmutableMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = [e for r in rows for e in r]
        return self.matrix(len(rows), cols, flat)

    def zeros(self, rows: int, cols: int) -> ImmutableMatrix:
        return ImmutableMatrix.zeros(rows, cols)

    def identity(self, k: int) -> ImmutableMatrix:
        return ImmutableMatrix.eye(k)

    def reduce(self, m) -> ImmutableMatrix:
        m = ImmutableMatrix(m)
        if self.order == 0:
            return m
        return m.applyfunc(lambda x: self.element(to_fraction(x)))

    # -- arithmetic ---------------------------------------------------

    def mul(self, a, b) -> ImmutableMatrix:
        if a.cols != b.rows:
            raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
        if 0 in (a.rows, a.cols, b.cols):
            return ImmutableMatrix.zeros(a.rows, b.cols)
        return self.reduce(a * b)

    def add(self, a, b) -> ImmutableMatrix:
        return self.reduce(a + b)

    def sub(self, a, b) -> ImmutableMatrix:
        return self.reduce(a - b)

    def hstack(self, blocks: Iterable, rows: int) -> ImmutableMatrix:
        blocks = [b for b in blocks if b.cols > 0]
        if not blocks:
            return ImmutableMatrix.zeros(rows, 0)
        for b in blocks:
            if b.rows != rows:
                raise ValueError(f"hstack row mismatch: {b.rows} != {rows}")
        if rows == 0:
            return ImmutableMatrix.zeros(0, sum(b.cols for b in blocks))
        return ImmutableMatrix.hstack(*blocks)

    def vstack(self, blocks: Iterable, cols: int) -> ImmutableMatrix:
        blocks = [b for b in blocks if b.rows > 0]
        if not blocks:
            return ImmutableMatrix.zeros(0, cols)
        for b in blocks:
            if b.cols != cols:
                raise ValueError(f"vstack column mismatch: {b.cols} != {cols}")
        if cols == 0:
            return ImmutableMatrix.zeros(sum(b.rows for b in blocks), 0)
        return ImmutableMatrix.vstack(*blocks)

    def block_diag(self, blocks: Sequence) -> ImmutableMatrix:
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return ImmutableMatrix(rows, cols, [e for r in out for e in r])

    def is_zero(self, m) -> bool:
        return all(x == 0 for x in m)

    # -- DomainMatrix backed ------------------------------------------

    def _dm(self, m) -> DomainMatrix:
        return DomainMatrix.from_Matrix(ImmutableMatrix(m).as_mutable()).convert_to(
            self.domain
        )

    def rank(self, m) -> int:
        if 0 in m.shape:
            return 0
        return int(self._dm(m).rank())

    def rref(self, m) -> Tuple[ImmutableMatrix, Tuple[int, ...]]:
        if 0 in m.shape:
            return ImmutableMatrix(m), ()
        reduced, pivots = self._dm(m).rref()
        return self.reduce(reduced.to_Matrix()), tuple(int(p) for p in pivots)

    def kernel(self, m) -> ImmutableMatrix:
        """Basis of {v : m v = 0} as the columns of a (cols x k) matrix."""
        ncols = m.cols
        if ncols == 0:
            return ImmutableMatrix.zeros(0, 0)
        if m.rows == 0:
            return ImmutableMatrix.eye(ncols)
        reduced, pivots = self.rref(m)
        free = [c for c in range(ncols) if c not in pivots]
        columns: List[List] = []
        for f in free:
            v = [0] * ncols
            v[f] = 1
            for row, pc in enumerate(pivots):
                v[pc] = -reduced[row, f]
            columns.append(v)
        if not columns:
            return ImmutableMatrix.zeros(ncols, 0)
        flat = [columns[j][i] for i in range(ncols) for j in range(len(columns))]
        return self.reduce(ImmutableMatrix(ncols, len(columns), flat))

    def nullity(self, m) -> int:
        return m.cols - self.rank(m)

    def solve_columns(self, b, y) -> ImmutableMatrix:
        """
        Solve b x = y for x, with b of full column rank.
        Raises ValueError when a column of y is outside the column space of b.
        """
        k = b.cols
        if b.rows != y.rows:
            raise ValueError(f"row mismatch {b.shape} vs {y.shape}")
        if k == 0:
            if not self.is_zero(y):
                raise ValueError("inconsistent system: empty basis, nonzero target")
            return ImmutableMatrix.zeros(0, y.cols)
        if y.cols == 0:
            return ImmutableMatrix.zeros(k, 0)
        reduced, pivots = self.rref(self.hstack([b, y], b.rows))
        if tuple(pivots[:k]) != tuple(range(k)):
            raise ValueError("basis matrix is not of full column rank")
        if any(p >= k for p in pivots):
            raise ValueError("inconsistent system: target outside column space")
        return reduced[:k, k:]

    def contains_columns(self, b, y) -> bool:
        if y.cols == 0:
            return True
        return self.rank(self.hstack([b, y], b.rows)) == self.rank(b)

    def complement(self, b, dim: int) -> ImmutableMatrix:
        """Standard basis columns extending the column space of b to F^dim."""
        chosen = []
        current = b
        r = self.rank(b)
        for k in range(dim):
            if r == dim:
                break
            e = ImmutableMatrix(dim, 1, [1 if i == k else 0 for i in range(dim)])
            trial = self.hstack([current, e], dim)
            rt = self.rank(trial)
            if rt > r:
                chosen.append(e)
                current = trial
                r = rt
        return self.hstack(chosen, dim)

    def det(self, m) -> Fraction:
        if m.rows != m.cols:
            raise ValueError("determinant of a non-square matrix")
        if m.rows == 0:
            return Fraction(1)
        value = to_fraction(self.domain.to_sympy(self._dm(m).det()))
        if self.order:
            value = Fraction(value.numerator % self.order)
        return value

    def inverse(self, m) -> ImmutableMatrix:
        if m.rows != m.cols:
            raise ValueError("inverse of a non-square matrix")
        return self.reduce(self._dm(m).inv().to_Matrix())


@lru_cache(maxsize=None)
def get_field(order: int = 0) -> ExactField:
    return ExactField(order)
