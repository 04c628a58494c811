# src/homology/euler_series.py
"""
Ext dimensions and the Euler series <M,N>_t = sum_p dim Ext^p(M,N) (-t)^p.

Ext^p for p >= 1 is read off the short exact sequences
0 -> Omega^p -> P_{p-1} -> Omega^{p-1} -> 0 by rank arithmetic:
    Ext^p(M,N) = hom(Omega^p,N) - hom(P_{p-1},N) + hom(Omega^{p-1},N)
with hom(P_v, N) = dim N_v. Periodic resolutions give rational series.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, Rational, cancel, fraction, symbols

from src.homology.resolution import (
    FINITE,
    PERIODIC,
    ProjResolution,
    ResolutionUndeterminedError,
    min_proj_resolution,
)
from src.quiver.quiverrep import (
    IndecType,
    all_indecomposables,
    bilinear_form_A,
    cartan_matrix,
    dim_vector,
    multiset_hom_dim,
    normalize_multiset,
    simple,
    simple_prime,
)
from src.utils.field import to_fraction

logger = logging.getLogger(__name__)

t = symbols("t")


class PoleAtOneError(ZeroDivisionError):
    pass


def _poly_text(coeffs: Sequence[int]) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or k == 0) else ""
        body += mono
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts) if parts else "0"


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out) if out else (0,)


@dataclass(frozen=True)
class EulerSeries:
    """numerator / denominator, coefficients low degree first, denominator[0] == 1."""

    numerator: Tuple[int, ...]
    denominator: Tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, "numerator", _trim(self.numerator))
        object.__setattr__(self, "denominator", _trim(self.denominator))
        if self.denominator[0] != 1:
            raise ValueError(f"denominator must have constant term 1, got {self.denominator}")

    @classmethod
    def from_expr(cls, expr) -> "EulerSeries":
        num, den = fraction(cancel(expr))
        pn = Poly(num, t)
        pd = Poly(den, t)
        nc = [to_fraction(c) for c in reversed(pn.all_coeffs())]
        dc = [to_fraction(c) for c in reversed(pd.all_coeffs())]
        scale = dc[0]
        if scale == 0:
            raise ValueError(f"denominator of {expr} vanishes at t = 0")
        nc = [c / scale for c in nc]
        dc = [c / scale for c in dc]
        if any(c.denominator != 1 for c in nc + dc):
            raise ValueError(f"{expr} does not normalize to integer coefficients")
        return cls(tuple(int(c) for c in nc), tuple(int(c) for c in dc))

    def to_expr(self):
        num = sum(Rational(c) * t**k for k, c in enumerate(self.numerator))
        den = sum(Rational(c) * t**k for k, c in enumerate(self.denominator))
        return num / den

    @property
    def is_polynomial(self) -> bool:
        return self.denominator == (1,)

    @property
    def degree(self) -> Optional[int]:
        if not self.is_polynomial:
            return None
        return 0 if self.numerator == (0,) else len(self.numerator) - 1

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        den = sum(Fraction(c) * x**k for k, c in enumerate(self.denominator))
        if den == 0:
            raise PoleAtOneError(f"{self} has a pole at t = {x}")
        num = sum(Fraction(c) * x**k for k, c in enumerate(self.numerator))
        return num / den

    def at_one(self) -> Fraction:
        return self.evaluate(1)

    def expand(self, terms: int) -> Tuple[int, ...]:
        """First power-series coefficients in t."""
        out: List[Fraction] = []
        for k in range(terms):
            c = Fraction(self.numerator[k]) if k < len(self.numerator) else Fraction(0)
            for j in range(1, min(k, len(self.denominator) - 1) + 1):
                c -= self.denominator[j] * out[k - j]
            out.append(c)
        return tuple(int(c) for c in out)

    def __str__(self) -> str:
        num = _poly_text(self.numerator)
        if self.is_polynomial:
            return num
        nonzero = sum(1 for c in self.numerator if c)
        if nonzero > 1:
            num = f"({num})"
        return f"{num}/({_poly_text(self.denominator)})"

    def to_dict(self) -> dict:
        v = self.at_one()
        return {
            "numerator_coeffs": list(self.numerator),
            "denominator_coeffs": list(self.denominator),
            "value_at_1_num": v.numerator,
            "value_at_1_den": v.denominator,
        }


def _hom_proj(multiplicities: Sequence[int], nt: IndecType, n: int) -> int:
    return int(np.dot(np.array(multiplicities, dtype=np.int64), np.array(dim_vector(nt, n), dtype=np.int64)))


def _reduced_degree(res: ProjResolution, p: int) -> int:
    if res.status == PERIODIC:
        p0, ell = res.period
        q0 = p0 + 1
        if p >= q0 + ell:
            return q0 + (p - q0) % ell
    return p


def _ext_from_resolution(res: ProjResolution, nt: IndecType, p: int) -> int:
    n = res.n
    if p == 0:
        return multiset_hom_dim(res.source, (nt,), n, res.order)
    p = _reduced_degree(res, p)
    if res.status == FINITE and p > len(res.terms):
        return 0
    value = (
        multiset_hom_dim(res.syzygy(p), (nt,), n, res.order)
        - _hom_proj(res.term(p - 1), nt, n)
        + multiset_hom_dim(res.syzygy(p - 1), (nt,), n, res.order)
    )
    if value < 0:
        raise ArithmeticError(f"negative Ext dimension {value} in degree {p}")
    return value


def ext_dim(m, nt: IndecType, p: int, n: int, max_depth: Optional[int] = None) -> int:
    """dim Ext^p(M, N)."""
    if p < 0:
        raise ValueError(f"degree must be >= 0, got {p}")
    nt.validate(n)
    res = min_proj_resolution(m, n, max_depth)
    return _ext_from_resolution(res, nt, p)


@lru_cache(maxsize=None)
def _series(m: IndecType, nt: IndecType, n: int, max_depth: Optional[int]) -> EulerSeries:
    res = min_proj_resolution(m, n, max_depth)
    if res.status == FINITE:
        coeffs = [
            _ext_from_resolution(res, nt, p) * (-1) ** p for p in range(len(res.terms) + 1)
        ]
        return EulerSeries(tuple(coeffs))
    if res.status != PERIODIC:
        raise ResolutionUndeterminedError(
            f"resolution of {m.label} is undetermined at depth {res.max_depth}"
        )
    p0, ell = res.period
    q0 = p0 + 1
    prefix = sum(
        _ext_from_resolution(res, nt, p) * (-t) ** p for p in range(q0)
    )
    tail = sum(
        _ext_from_resolution(res, nt, q0 + r) * (-t) ** (q0 + r) for r in range(ell)
    )
    return EulerSeries.from_expr(prefix + tail / (1 - (-t) ** ell))


def euler_series(m: IndecType, nt: IndecType, n: int, max_depth: Optional[int] = None) -> EulerSeries:
    """<M, N>_t."""
    m.validate(n)
    nt.validate(n)
    series = _series(m, nt, n, max_depth)
    logger.debug("<%s, %s>_t = %s", m.label, nt.label, series)
    return series


def euler_at_one(m: IndecType, nt: IndecType, n: int, max_depth: Optional[int] = None) -> Fraction:
    return euler_series(m, nt, n, max_depth).at_one()


@lru_cache(maxsize=None)
def simple_euler_matrix(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """(<S_i, S_j>_1)_{i,j}."""
    simples = [simple(i, n) for i in range(1, n + 1)]
    return tuple(tuple(euler_at_one(a, b, n) for b in simples) for a in simples)


@dataclass(frozen=True)
class CartanInverseReport:
    ok: bool
    product: Tuple[Tuple[Fraction, ...], ...]


def cartan_inverse_check(n: int) -> CartanInverseReport:
    """(<S_i, S_j>_1) times C_A^t must be the identity."""
    e = simple_euler_matrix(n)
    c = cartan_matrix(n)
    product = tuple(
        tuple(sum(e[i][k] * int(c[j, k]) for k in range(n)) for j in range(n))
        for i in range(n)
    )
    ok = all(product[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
    return CartanInverseReport(ok=ok, product=product)


@dataclass(frozen=True)
class AdditivityReport:
    ok: bool
    lhs: Fraction
    rhs: Fraction


def additivity_check(m: IndecType, nt: IndecType, n: int) -> AdditivityReport:
    """<M,N>_1 against sum_{i,j} dim M_i dim N_j <S_i, S_j>_1."""
    lhs = euler_at_one(m, nt, n)
    e = simple_euler_matrix(n)
    dm, dn = dim_vector(m, n), dim_vector(nt, n)
    rhs = sum(
        (dm[i] * dn[j] * e[i][j] for i in range(n) for j in range(n) if dm[i] and dn[j]),
        Fraction(0),
    )
    return AdditivityReport(ok=lhs == rhs, lhs=lhs, rhs=rhs)


def symmetrization_check(m: IndecType, nt: IndecType, n: int) -> AdditivityReport:
    """<M,N>_1 + <N,M>_1 against (M,N)_A."""
    lhs = euler_at_one(m, nt, n) + euler_at_one(nt, m, n)
    rhs = bilinear_form_A(dim_vector(m, n), dim_vector(nt, n))
    return AdditivityReport(ok=lhs == rhs, lhs=lhs, rhs=rhs)


def restriction_set(n: int) -> Tuple[IndecType, ...]:
    return tuple(simple(i, n) for i in range(1, n)) + (simple_prime(n),)


def restriction_check(n: int) -> Dict[Tuple[str, str], EulerSeries]:
    """
    Pairs from {S_1..S_{n-1}, S'_n} whose series is not a polynomial of
    degree <= 1. Empty when the restriction property holds.
    """
    bad = {}
    mods = restriction_set(n)
    for a in mods:
        for b in mods:
            s = euler_series(a, b, n)
            if not s.is_polynomial or s.degree > 1:
                bad[(a.label, b.label)] = s
    return bad


def pole_free_check(n: int) -> List[Tuple[str, str]]:
    """Pairs whose series has a pole at t = 1 (expected: none)."""
    bad = []
    for a in all_indecomposables(n):
        for b in all_indecomposables(n):
            try:
                euler_at_one(a, b, n)
            except PoleAtOneError:
                bad.append((a.label, b.label))
    return bad
