# src/lie/liecore.py
"""
Exact finite-dimensional Lie algebras over the rationals.

A LieAlgebra is an ordered basis of string labels plus structure constants
c(i, j) stored for i < j only; c(j, i) = -c(i, j) and c(i, i) = 0 follow.
Closures and quotients row-reduce through the exact field layer so that
returned bases are deterministic.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.utils.field import get_field, to_fraction

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Word = Union[str, Tuple["Word", "Word"]]


class UnknownLabelError(KeyError):
    pass


class NotAnIdealError(ValueError):
    pass


class NonDiagonalActionError(ValueError):
    pass


class LieElement:
    """Sparse rational combination of basis labels. Zero coefficients are dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[str, Scalar]] = None):
        clean = {}
        for label, coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef:
                clean[str(label)] = coef
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def basis(cls, label: str) -> "LieElement":
        return cls({label: 1})

    @property
    def terms(self) -> Dict[str, Fraction]:
        return dict(self._terms)

    def coeff(self, label: str) -> Fraction:
        return self._terms.get(label, Fraction(0))

    def support(self) -> Tuple[str, ...]:
        return tuple(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return LieElement(out)

    def __neg__(self) -> "LieElement":
        return LieElement({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "LieElement":
        s = Fraction(scalar)
        return LieElement({k: s * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"LieElement({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for label, c in self._terms.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = label if mag == 1 else f"{mag}*{label}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class JacobiResult:
    ok: bool
    triple: Optional[Tuple[str, str, str]] = None
    residual: Optional[LieElement] = None


class LieAlgebra:
    def __init__(
        self,
        basis: Sequence[str],
        sc: Mapping[Tuple[int, int], Mapping[int, Scalar]],
        name: str = "",
    ):
        self.basis: Tuple[str, ...] = tuple(str(b) for b in basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis labels must be distinct")
        self._index = {b: k for k, b in enumerate(self.basis)}
        self.name = name
        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (i, j), terms in sc.items():
            if not (0 <= i < j < len(self.basis)):
                raise ValueError(f"structure constants must be keyed by i < j, got {(i, j)}")
            clean = {int(k): Fraction(v) for k, v in terms.items() if Fraction(v)}
            if clean:
                table[(i, j)] = dict(sorted(clean.items()))
        self._sc = table

    # -- construction -------------------------------------------------

    @classmethod
    def from_rule(
        cls,
        basis: Sequence[str],
        rule: Callable[[str, str], Mapping[str, Scalar]],
        name: str = "",
        check_antisymmetry: bool = True,
    ) -> "LieAlgebra":
        """Tabulate rule(a, b) -> {label: coefficient} on basis pairs."""
        basis = tuple(basis)
        index = {b: k for k, b in enumerate(basis)}

        def encode(terms, a, b):
            out = {}
            for label, coef in terms.items():
                if label not in index:
                    raise UnknownLabelError(f"[{a}, {b}] produced unknown label {label!r}")
                out[index[label]] = out.get(index[label], 0) + Fraction(coef)
            return {k: v for k, v in out.items() if v}

        sc = {}
        for i, a in enumerate(basis):
            if check_antisymmetry and encode(rule(a, a), a, a):
                raise ValueError(f"[{a}, {a}] is not zero")
            for j in range(i + 1, len(basis)):
                b = basis[j]
                forward = encode(rule(a, b), a, b)
                if check_antisymmetry:
                    backward = encode(rule(b, a), b, a)
                    if backward != {k: -v for k, v in forward.items()}:
                        raise ValueError(f"rule is not antisymmetric on ({a}, {b})")
                if forward:
                    sc[(i, j)] = forward
        return cls(basis, sc, name=name)

    @classmethod
    def abelian(cls, basis: Sequence[str], name: str = "") -> "LieAlgebra":
        return cls(basis, {}, name=name)

    def replace_bracket(self, a: str, b: str, value: LieElement) -> "LieAlgebra":
        """Copy of this algebra with [a, b] redefined (and [b, a] = -value)."""
        i, j = self.index(a), self.index(b)
        if i == j:
            raise ValueError("cannot redefine [x, x]")
        if i > j:
            i, j, value = j, i, -value
        sc = {k: dict(v) for k, v in self._sc.items()}
        sc[(i, j)] = {self.index(lbl): c for lbl, c in value.terms.items()}
        return LieAlgebra(self.basis, sc, name=self.name)

    # -- access -------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieAlgebra)
            and self.basis == other.basis
            and self._sc == other._sc
        )

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or 'anonymous'}, dim={self.dim})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"{label!r} is not a basis label of {self!r}") from None

    def e(self, label: str) -> LieElement:
        self.index(label)
        return LieElement.basis(label)

    def structure_constants(self) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
        return {k: dict(v) for k, v in self._sc.items()}

    def structure_constant_bound(self) -> Fraction:
        """Largest absolute value among the structure constants."""
        return max(
            (abs(c) for terms in self._sc.values() for c in terms.values()),
            default=Fraction(0),
        )

    def denominators(self) -> Tuple[int, ...]:
        return tuple(
            sorted({c.denominator for terms in self._sc.values() for c in terms.values()})
        )

    # -- vectors ------------------------------------------------------

    def vector(self, x: LieElement) -> Tuple[Fraction, ...]:
        v = [Fraction(0)] * self.dim
        for label, c in x.terms.items():
            v[self.index(label)] = c
        return tuple(v)

    def element(self, v: Sequence[Scalar]) -> LieElement:
        if len(v) != self.dim:
            raise ValueError(f"vector of length {len(v)} for dim {self.dim}")
        return LieElement({self.basis[k]: to_fraction(c) for k, c in enumerate(v)})

    # -- bracket ------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return self._sc.get((i, j), {})
        return {k: -c for k, c in self._sc.get((j, i), {}).items()}

    def bracket(self, a: LieElement, b: LieElement) -> LieElement:
        out: Dict[int, Fraction] = {}
        for la, ca in a.terms.items():
            i = self.index(la)
            for lb, cb in b.terms.items():
                j = self.index(lb)
                for k, c in self.bracket_basis(i, j).items():
                    out[k] = out.get(k, 0) + ca * cb * c
        return LieElement({self.basis[k]: c for k, c in out.items()})

    def evaluate(self, word: Word, assignment: Mapping[str, LieElement]) -> LieElement:
        """Evaluate a nested bracket word; leaves are keys of assignment."""
        if isinstance(word, str):
            if word not in assignment:
                raise UnknownLabelError(f"no value assigned to generator {word!r}")
            return assignment[word]
        left, right = word
        return self.bracket(self.evaluate(left, assignment), self.evaluate(right, assignment))

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        brackets = []
        for (i, j), terms in sorted(self._sc.items()):
            brackets.append(
                {
                    "i": i,
                    "j": j,
                    "terms": [
                        {"k": k, "num": c.numerator, "den": c.denominator}
                        for k, c in terms.items()
                    ],
                }
            )
        return {"basis": list(self.basis), "brackets": brackets}

    @classmethod
    def from_json(cls, data: Mapping, name: str = "") -> "LieAlgebra":
        sc = {}
        for entry in data.get("brackets", []):
            sc[(int(entry["i"]), int(entry["j"]))] = {
                int(t["k"]): Fraction(int(t["num"]), int(t["den"])) for t in entry["terms"]
            }
        return cls(data["basis"], sc, name=name)


def bracket(L: LieAlgebra, a: LieElement, b: LieElement) -> LieElement:
    return L.bracket(a, b)


def jacobi_check(L: LieAlgebra) -> JacobiResult:
    """Exhaustive Jacobi identity on basis triples i < j < k."""
    n = L.dim
    for i in range(n):
        x = LieElement.basis(L.basis[i])
        for j in range(i + 1, n):
            y = LieElement.basis(L.basis[j])
            xy = L.bracket(x, y)
            for k in range(j + 1, n):
                z = LieElement.basis(L.basis[k])
                residual = (
                    L.bracket(x, L.bracket(y, z))
                    + L.bracket(y, L.bracket(z, x))
                    + L.bracket(z, xy)
                )
                if residual:
                    triple = (L.basis[i], L.basis[j], L.basis[k])
                    logger.debug("Jacobi fails on %s: %s", triple, residual)
                    return JacobiResult(ok=False, triple=triple, residual=residual)
    return JacobiResult(ok=True)


# -- spans ------------------------------------------------------------


def _rref_rows(L: LieAlgebra, vectors: Sequence[Sequence[Fraction]]) -> Tuple[List[Tuple[Fraction, ...]], Tuple[int, ...]]:
    fld = get_field(0)
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return [], ()
    reduced, pivots = fld.rref(fld.from_rows(rows, L.dim))
    out = [
        tuple(to_fraction(reduced[r, c]) for c in range(L.dim)) for r in range(len(pivots))
    ]
    return out, pivots


def span_basis(L: LieAlgebra, elements: Iterable[LieElement]) -> Tuple[LieElement, ...]:
    """Reduced row echelon basis of the span of elements."""
    rows, _ = _rref_rows(L, [L.vector(x) for x in elements])
    return tuple(L.element(r) for r in rows)


def span_dim(L: LieAlgebra, elements: Iterable[LieElement]) -> int:
    vectors = [L.vector(x) for x in elements]
    if not vectors:
        return 0
    fld = get_field(0)
    return fld.rank(fld.from_rows([list(v) for v in vectors], L.dim))


def in_span(L: LieAlgebra, basis: Sequence[LieElement], x: LieElement) -> bool:
    return span_dim(L, list(basis) + [x]) == span_dim(L, basis)


def _closure(L: LieAlgebra, gens: Sequence[LieElement], ideal: bool) -> Tuple[LieElement, ...]:
    basis = list(span_basis(L, gens))
    frontier = list(basis)
    full = [LieElement.basis(b) for b in L.basis]
    rank = len(basis)
    while frontier and rank < L.dim:
        added = []
        for a in frontier:
            partners = full if ideal else basis + added
            for b in partners:
                c = L.bracket(a, b)
                if not c:
                    continue
                if span_dim(L, basis + added + [c]) > rank + len(added):
                    added.append(c)
        basis.extend(added)
        rank += len(added)
        frontier = added
    return span_basis(L, basis)


def subalgebra_closure(L: LieAlgebra, gens: Sequence[LieElement]) -> Tuple[LieElement, ...]:
    closure = _closure(L, gens, ideal=False)
    logger.debug("subalgebra closure of %d generators in %r: dim %d", len(gens), L, len(closure))
    return closure


def ideal_closure(L: LieAlgebra, gens: Sequence[LieElement]) -> Tuple[LieElement, ...]:
    closure = _closure(L, gens, ideal=True)
    logger.debug("ideal closure of %d generators in %r: dim %d", len(gens), L, len(closure))
    return closure


def is_ideal(L: LieAlgebra, basis: Sequence[LieElement]) -> bool:
    basis = list(basis)
    for label in L.basis:
        e = LieElement.basis(label)
        for v in basis:
            if not in_span(L, basis, L.bracket(e, v)):
                return False
    return True


# -- quotients --------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """L -> L/I with L/I based on the labels that are not pivots of I's echelon form."""

    source: LieAlgebra
    ideal: Tuple[LieElement, ...]
    algebra: LieAlgebra
    pivots: Tuple[int, ...]

    def project(self, x: LieElement) -> LieElement:
        v = list(self.source.vector(x))
        for row, p in zip(self.ideal, self.pivots):
            coef = v[p]
            if coef:
                rv = self.source.vector(row)
                v = [a - coef * b for a, b in zip(v, rv)]
        return LieElement({self.source.basis[k]: c for k, c in enumerate(v)})


def quotient_map(L: LieAlgebra, ideal_basis: Sequence[LieElement]) -> QuotientMap:
    rows, pivots = _rref_rows(L, [L.vector(x) for x in ideal_basis])
    ideal = tuple(L.element(r) for r in rows)
    if not is_ideal(L, ideal):
        raise NotAnIdealError(f"span of {len(ideal)} elements is not an ideal of {L!r}")
    keep = [k for k in range(L.dim) if k not in pivots]
    labels = [L.basis[k] for k in keep]
    pre = QuotientMap(L, ideal, LieAlgebra.abelian(labels), pivots)
    sc = {}
    for a in range(len(keep)):
        for b in range(a + 1, len(keep)):
            image = pre.project(L.bracket(LieElement.basis(labels[a]), LieElement.basis(labels[b])))
            terms = {labels.index(lbl): c for lbl, c in image.terms.items()}
            if terms:
                sc[(a, b)] = terms
    name = f"{L.name}/I" if L.name else ""
    return QuotientMap(L, ideal, LieAlgebra(labels, sc, name=name), pivots)


def quotient(L: LieAlgebra, ideal_basis: Sequence[LieElement]) -> LieAlgebra:
    return quotient_map(L, ideal_basis).algebra


# -- weights ----------------------------------------------------------


def weight_decomposition(
    L: LieAlgebra, h_basis: Sequence[LieElement]
) -> Dict[Tuple[Fraction, ...], Tuple[LieElement, ...]]:
    """
    Group basis vectors by their simultaneous ad(h)-eigenvalues. Every basis
    vector must be an eigenvector of every h.
    """
    groups: Dict[Tuple[Fraction, ...], List[LieElement]] = {}
    for label in L.basis:
        e = LieElement.basis(label)
        weight = []
        for h in h_basis:
            image = L.bracket(h, e)
            if set(image.support()) - {label}:
                raise NonDiagonalActionError(f"[{h}, {label}] = {image} is not a multiple of {label}")
            weight.append(image.coeff(label))
        groups.setdefault(tuple(weight), []).append(e)
    return {w: tuple(groups[w]) for w in sorted(groups)}
