# src/quiver/hall_oracle.py
"""
Brute-force Hall oracle.

Counts F_p-points of the submodule variety
    V(X,Y;Z) = {Z1 <= Z : Z1 ~ Y, Z/Z1 ~ X}
by enumerating subspace tuples vertex by vertex, and reads the Euler
characteristic off the counting polynomial at q = 1.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np
from sympy import ImmutableMatrix

from src.lie.liecore import LieElement
from src.quiver.quiverrep import (
    IndecType,
    Multiset,
    all_indecomposables,
    build_module,
    dim_vector,
    hom_fingerprint,
    indec_fingerprint,
    multiset_dim_vector,
    multiset_label,
    normalize_multiset,
    quotient_representation,
    subrepresentation,
)
from src.utils.field import ExactField, get_field

logger = logging.getLogger(__name__)

DEFAULT_PRIMES = (2, 3, 5)
DEFAULT_BUDGET = 200_000


class BudgetExceededError(RuntimeError):
    def __init__(self, message: str, required: int = 0, budget: int = 0):
        super().__init__(message)
        self.required = required
        self.budget = budget


class NonPolynomialCountError(ArithmeticError):
    pass


def gaussian_binomial(d: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^d."""
    if k < 0 or k > d:
        return 0
    num = den = 1
    for r in range(k):
        num *= q ** (d - r) - 1
        den *= q ** (r + 1) - 1
    return num // den


def iter_subspaces(d: int, k: int, field: ExactField) -> Iterator[ImmutableMatrix]:
    """
    Every k-dimensional subspace of F_p^d exactly once, as a d x k matrix whose
    columns are the rows of the subspace's reduced row echelon form.
    """
    q = field.order
    if k == 0:
        yield field.zeros(d, 0)
        return
    for pivots in itertools.combinations(range(d), k):
        free = [
            (r, c)
            for r, p in enumerate(pivots)
            for c in range(p + 1, d)
            if c not in pivots
        ]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), val in zip(free, values):
                rows[r][c] = val
            yield field.from_rows(rows).T


def variety_size_bound(z_dims: Sequence[int], y_dims: Sequence[int], q: int) -> int:
    return int(
        np.prod([gaussian_binomial(d, k, q) for d, k in zip(z_dims, y_dims)], dtype=object)
    )


def _invariant_tuples(zrep, y_dims: Sequence[int]) -> Iterator[Tuple[ImmutableMatrix, ...]]:
    fld = zrep.field
    n = zrep.n
    choices = [list(iter_subspaces(zrep.dims[v], y_dims[v], fld)) for v in range(n)]
    chosen: List[ImmutableMatrix] = []

    def rec(v: int):
        if v == n:
            yield tuple(chosen)
            return
        for basis in choices[v]:
            if v > 0:
                image = fld.mul(zrep.maps[v - 1], chosen[v - 1])
                if not fld.contains_columns(basis, image):
                    continue
            if v == n - 1:
                image = fld.mul(zrep.maps[n - 1], basis)
                if not fld.contains_columns(basis, image):
                    continue
            chosen.append(basis)
            yield from rec(v + 1)
            chosen.pop()

    yield from rec(0)


def _multiset_fingerprint(types: Multiset, n: int, order: int) -> Tuple[int, ...]:
    total = np.zeros(len(all_indecomposables(n)), dtype=np.int64)
    for t in types:
        total += np.array(indec_fingerprint(t, n, order), dtype=np.int64)
    return tuple(int(x) for x in total)


def submodule_variety_count(
    x, y, z, p: int, n: int, budget: int = DEFAULT_BUDGET
) -> int:
    """Number of F_p-points of V(X,Y;Z)."""
    x, y, z = normalize_multiset(x), normalize_multiset(y), normalize_multiset(z)
    z_dims = multiset_dim_vector(z, n)
    y_dims = multiset_dim_vector(y, n)
    x_dims = multiset_dim_vector(x, n)
    if tuple(a + b for a, b in zip(x_dims, y_dims)) != z_dims:
        return 0
    required = variety_size_bound(z_dims, y_dims, p)
    if required > budget:
        raise BudgetExceededError(
            f"V({multiset_label(x)}; {multiset_label(y)}; {multiset_label(z)}) over F_{p} "
            f"needs {required} subspace tuples, budget {budget}",
            required=required,
            budget=budget,
        )
    fld = get_field(p)
    zrep = build_module(z, n, fld)
    want_sub = _multiset_fingerprint(y, n, p)
    want_quot = _multiset_fingerprint(x, n, p)
    count = 0
    for bases in _invariant_tuples(zrep, y_dims):
        sub = subrepresentation(zrep, bases)
        if hom_fingerprint(sub) != want_sub:
            continue
        quot, _ = quotient_representation(zrep, bases)
        if hom_fingerprint(quot) == want_quot:
            count += 1
    return count


@dataclass(frozen=True)
class PointCountFit:
    counts: Tuple[Tuple[int, int], ...]
    slope: int
    intercept: int

    @property
    def value(self) -> int:
        """Counting polynomial at q = 1."""
        return self.slope + self.intercept


@lru_cache(maxsize=None)
def _fit(
    x: Multiset, y: Multiset, z: Multiset, n: int, primes: Tuple[int, ...], budget: int
) -> PointCountFit:
    if len(primes) < 2:
        raise ValueError(f"need at least two primes, got {primes}")
    p0, p1 = primes[0], primes[1]
    c0 = submodule_variety_count(x, y, z, p0, n, budget)
    c1 = submodule_variety_count(x, y, z, p1, n, budget)
    if c0 == c1:
        return PointCountFit(counts=((p0, c0), (p1, c1)), slope=0, intercept=c0)
    if (c1 - c0) % (p1 - p0):
        raise NonPolynomialCountError(
            f"counts {c0}@{p0}, {c1}@{p1} for V({multiset_label(x)}; "
            f"{multiset_label(y)}; {multiset_label(z)}) are not on an integer line"
        )
    slope = (c1 - c0) // (p1 - p0)
    intercept = c0 - slope * p0
    if len(primes) < 3:
        raise NonPolynomialCountError(
            "point counts differ and no third prime is configured to confirm the fit"
        )
    p2 = primes[2]
    c2 = submodule_variety_count(x, y, z, p2, n, budget)
    if c2 != slope * p2 + intercept:
        raise NonPolynomialCountError(
            f"V({multiset_label(x)}; {multiset_label(y)}; {multiset_label(z)}) needs a "
            f"counting polynomial of degree >= 2: counts {c0}@{p0}, {c1}@{p1}, {c2}@{p2}"
        )
    return PointCountFit(
        counts=((p0, c0), (p1, c1), (p2, c2)), slope=slope, intercept=intercept
    )


def euler_characteristic_fit(
    x, y, z, n: int, primes: Sequence[int] = DEFAULT_PRIMES, budget: int = DEFAULT_BUDGET
) -> PointCountFit:
    x, y, z = normalize_multiset(x), normalize_multiset(y), normalize_multiset(z)
    fit = _fit(x, y, z, n, tuple(primes), int(budget))
    logger.debug(
        "chi V(%s; %s; %s) counts=%s -> %d",
        multiset_label(x),
        multiset_label(y),
        multiset_label(z),
        fit.counts,
        fit.value,
    )
    return fit


def euler_characteristic(
    x, y, z, n: int, primes: Sequence[int] = DEFAULT_PRIMES, budget: int = DEFAULT_BUDGET
) -> int:
    return euler_characteristic_fit(x, y, z, n, primes, budget).value


def _candidates(x: Multiset, y: Multiset, n: int) -> List[IndecType]:
    total = tuple(
        a + b for a, b in zip(multiset_dim_vector(x, n), multiset_dim_vector(y, n))
    )
    return [z for z in all_indecomposables(n) if dim_vector(z, n) == total]


def hall_product(
    x, y, n: int, primes: Sequence[int] = DEFAULT_PRIMES, budget: int = DEFAULT_BUDGET
) -> Dict[IndecType, int]:
    """Indecomposable part of u_X * u_Y: Z -> chi(V(X,Y;Z))."""
    x, y = normalize_multiset(x), normalize_multiset(y)
    out = {}
    for z in _candidates(x, y, n):
        chi = euler_characteristic(x, y, (z,), n, primes, budget)
        if chi:
            out[z] = chi
    return out


def hall_bracket_oracle(
    x: IndecType,
    y: IndecType,
    n: int,
    primes: Sequence[int] = DEFAULT_PRIMES,
    budget: int = DEFAULT_BUDGET,
) -> LieElement:
    """[u_X, u_Y] = u_X u_Y - u_Y u_X, restricted to indecomposable Z."""
    terms = {}
    for z in _candidates((x,), (y,), n):
        forward = euler_characteristic((x,), (y,), (z,), n, primes, budget)
        backward = euler_characteristic((y,), (x,), (z,), n, primes, budget)
        if forward != backward:
            terms[z.label] = forward - backward
    return LieElement(terms)


def oracle_evidence(
    x: IndecType,
    y: IndecType,
    n: int,
    primes: Sequence[int] = DEFAULT_PRIMES,
    budget: int = DEFAULT_BUDGET,
) -> Dict[str, Dict[str, List[Tuple[int, int]]]]:
    """Per-prime point counts behind hall_bracket_oracle(x, y)."""
    out = {}
    for z in _candidates((x,), (y,), n):
        fwd = euler_characteristic_fit((x,), (y,), (z,), n, primes, budget)
        bwd = euler_characteristic_fit((y,), (x,), (z,), n, primes, budget)
        out[z.label] = {"xy": list(fwd.counts), "yx": list(bwd.counts)}
    return out
