# src/roots/rootsys.py
"""
Root systems of type B_n, C_n and BC_n in epsilon coordinates.

Roots are integer vectors (coefficient of eps_i at index i-1). Simple roots
of BC_n are alpha_i = eps_i - eps_{i+1} (i < n) and alpha_n = eps_n.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Iterable, Sequence, Tuple

import numpy as np

SYSTEMS = ("B", "C", "BC", "B+", "C+", "BC+")


class InvalidRankError(ValueError):
    pass


class RankMismatchError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Root:
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @classmethod
    def zero(cls, n: int) -> "Root":
        return cls((0,) * n)

    @classmethod
    def eps(cls, n: int, *terms: Tuple[int, int]) -> "Root":
        """eps(n, (1, i), (-1, j)) = eps_i - eps_j (1-based indices)."""
        c = [0] * n
        for coef, i in terms:
            c[i - 1] += coef
        return cls(tuple(c))

    def _check(self, other: "Root"):
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other: "Root") -> "Root":
        self._check(other)
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        self._check(other)
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else ("+" if parts else "")
            parts.append(f"{sign}{mag}e{i}")
        return "".join(parts) if parts else "0"


def inner(a: Root, b: Root) -> Fraction:
    a._check(b)
    return Fraction(int(np.dot(a.as_array(), b.as_array())))


def _check_rank(n: int):
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidRankError(f"rank must be a positive integer, got {n!r}")


def _pairs(n: int) -> Iterable[Tuple[int, int]]:
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            yield i, j


@dataclass(frozen=True)
class RootSystemBC:
    rank: int
    phi_B: FrozenSet[Root]
    phi_C: FrozenSet[Root]
    phi_BC: FrozenSet[Root]
    delta: Tuple[Root, ...]
    phi_plus_B: FrozenSet[Root]
    phi_plus_C: FrozenSet[Root]
    phi_plus_BC: FrozenSet[Root]

    def system(self, which: str) -> FrozenSet[Root]:
        table = {
            "B": self.phi_B,
            "C": self.phi_C,
            "BC": self.phi_BC,
            "B+": self.phi_plus_B,
            "C+": self.phi_plus_C,
            "BC+": self.phi_plus_BC,
        }
        if which not in table:
            raise ValueError(f"unknown system {which!r}, expected one of {SYSTEMS}")
        return table[which]

    def sorted(self, which: str) -> Tuple[Root, ...]:
        return tuple(sorted(self.system(which)))


@lru_cache(maxsize=None)
def build_root_system(n: int) -> RootSystemBC:
    _check_rank(n)
    mixed_plus = set()
    for i, j in _pairs(n):
        mixed_plus.add(Root.eps(n, (1, i), (1, j)))
        mixed_plus.add(Root.eps(n, (1, i), (-1, j)))
    short_plus = {Root.eps(n, (1, i)) for i in range(1, n + 1)}
    long_plus = {Root.eps(n, (2, i)) for i in range(1, n + 1)}

    plus_B = frozenset(mixed_plus | short_plus)
    plus_C = frozenset(mixed_plus | long_plus)
    plus_BC = frozenset(mixed_plus | short_plus | long_plus)

    def with_negatives(s):
        return frozenset(s | {-r for r in s})

    delta = tuple(Root.eps(n, (1, i), (-1, i + 1)) for i in range(1, n)) + (
        Root.eps(n, (1, n)),
    )
    return RootSystemBC(
        rank=n,
        phi_B=with_negatives(plus_B),
        phi_C=with_negatives(plus_C),
        phi_BC=with_negatives(plus_BC),
        delta=delta,
        phi_plus_B=plus_B,
        phi_plus_C=plus_C,
        phi_plus_BC=plus_BC,
    )


def simple_roots(n: int) -> Tuple[Root, ...]:
    return build_root_system(n).delta


def root_from_simple_coords(d: Sequence[int]) -> Root:
    """
    sum_k d_k alpha_k. In eps coordinates this is the first difference of d:
    c_1 = d_1, c_i = d_i - d_{i-1}.
    """
    d = np.asarray(list(d), dtype=np.int64)
    if d.size == 0:
        raise InvalidRankError("empty coordinate vector")
    return Root(tuple(int(c) for c in np.diff(d, prepend=0)))


def simple_coords(r: Root) -> Tuple[int, ...]:
    """Inverse of root_from_simple_coords: d_k = c_1 + ... + c_k."""
    return tuple(int(x) for x in np.cumsum(r.as_array()))


def is_nonnegative_combination(r: Root) -> bool:
    return all(x >= 0 for x in simple_coords(r))


def membership(r: Root, which: str) -> bool:
    rs = build_root_system(r.rank)
    return r in rs.system(which)


def gram_matrix(roots: Sequence[Root]) -> np.ndarray:
    a = np.array([r.coeffs for r in roots], dtype=np.int64)
    return a @ a.T


def weight_matrix(kind: str, n: int) -> np.ndarray:
    """
    The matrix (eps_i(h_j)) for the coroots h_1..h_n of type B or C:
    1 on the diagonal, -1 on the subdiagonal, bottom-right 2 in type B.
    """
    _check_rank(n)
    if kind not in ("B", "C"):
        raise ValueError(f"kind must be 'B' or 'C', got {kind!r}")
    e = np.eye(n, dtype=np.int64) - np.eye(n, k=-1, dtype=np.int64)
    if kind == "B":
        e[n - 1, n - 1] = 2
    return e
