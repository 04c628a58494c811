# src/lie/borel.py
"""
Matrix models of the Borel subalgebras b_B in so(2n+1) and b_C in sp(2n).

Both models use an antidiagonal form so that the Borel is upper triangular.
Generator names are shared with the presentation checks:
    type B: x1..xn, h1..hn
    type C: x1..x(n-1), x'n, h1..h(n-1), h'n   (x'_i = x_i, h'_i = h_i for i < n)
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import ImmutableMatrix

from src.lie.liecore import LieAlgebra, LieElement, Word
from src.roots.rootsys import InvalidRankError, Root, build_root_system, weight_matrix
from src.utils.field import get_field, to_fraction

logger = logging.getLogger(__name__)

KINDS = ("B", "C")

# A relation instance: lhs word must equal sum(coef * word) over rhs.
Relation = Tuple[str, str, Word, Tuple[Tuple[int, Word], ...]]


class ModelRelationError(AssertionError):
    pass


def _check(kind: str, n: int):
    if kind not in KINDS:
        raise ValueError(f"kind must be 'B' or 'C', got {kind!r}")
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidRankError(f"rank must be a positive integer, got {n!r}")


# -- generator names and words ----------------------------------------


def x_name(kind: str, i: int, n: int) -> str:
    return f"x'{n}" if (kind == "C" and i == n) else f"x{i}"


def h_name(kind: str, i: int, n: int) -> str:
    return f"h'{n}" if (kind == "C" and i == n) else f"h{i}"


def chain_word(i: int, j: int) -> Word:
    """x_{i,j} = [x_{i,j-1}, x_j], with x_{i,i} = x_i."""
    word: Word = f"x{i}"
    for m in range(i + 1, j + 1):
        word = (word, f"x{m}")
    return word


def prime_chain_word(i: int, n: int) -> Word:
    """x'_{i,n} = [x_{i,n-1}, x'_n], with x'_{n,n} = x'_n."""
    if i == n:
        return f"x'{n}"
    return (chain_word(i, n - 1), f"x'{n}")


def cartan_entry(kind: str, i: int, j: int, n: int) -> int:
    """The coefficient c with [h_i, x_j] = c x_j in the given type."""
    if i == j:
        return 2
    if kind == "B":
        if abs(i - j) == 1 and i != n:
            return -1
        if i == n and j == n - 1:
            return -2
        return 0
    if abs(i - j) == 1 and j != n:
        return -1
    if j == n and i == n - 1:
        return -2
    return 0


def _ad_power(x: str, k: int, y: Word) -> Word:
    word = y
    for _ in range(k):
        word = (x, word)
    return word


def relation_instances(kind: str, n: int) -> List[Relation]:
    """Every instance of the defining relations of type B or C, in generator names."""
    _check(kind, n)
    rels: List[Relation] = []
    tag = kind.lower()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append(
                (f"{tag}_cartan_commute", f"[{h_name(kind, i, n)},{h_name(kind, j, n)}]", (h_name(kind, i, n), h_name(kind, j, n)), ())
            )
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            c = cartan_entry(kind, i, j, n)
            xj = x_name(kind, j, n)
            rhs = ((c, xj),) if c else ()
            rels.append((f"{tag}_cartan_action", f"[{h_name(kind, i, n)},{xj}]", (h_name(kind, i, n), xj), rhs))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            c = cartan_entry(kind, i, j, n)
            xi, xj = x_name(kind, i, n), x_name(kind, j, n)
            rels.append((f"{tag}_serre", f"ad({xi})^{1 - c}({xj})", _ad_power(xi, 1 - c, xj), ()))
    return rels


def mixed_relation_instances(n: int) -> List[Relation]:
    """Mixed relations: [x_n, x'_n] = 0 and [[x_{n-1}, x_n], x'_n] = 0."""
    rels: List[Relation] = [("bc_mixed", f"[x{n},x'{n}]", (f"x{n}", f"x'{n}"), ())]
    if n >= 2:
        rels.append(
            ("bc_mixed", f"[[x{n - 1},x{n}],x'{n}]", ((f"x{n - 1}", f"x{n}"), f"x'{n}"), ())
        )
    return rels


def model_words(kind: str, n: int) -> List[Tuple[str, Word, Optional[Root]]]:
    """
    Basis words of b_B or b_C with their expected weights (None for the
    Cartan part), n + n^2 words in all.
    """
    _check(kind, n)
    out: List[Tuple[str, Word, Optional[Root]]] = []
    for i in range(1, n + 1):
        name = h_name(kind, i, n)
        out.append((name, name, None))
    if kind == "B":
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                weight = Root.eps(n, (1, i), (-1, j + 1)) if j < n else Root.eps(n, (1, i))
                out.append((f"x({i},{j})", chain_word(i, j), weight))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out.append(
                    (f"[x({i},{n}),x({j},{n})]", (chain_word(i, n), chain_word(j, n)), Root.eps(n, (1, i), (1, j)))
                )
        return out
    for i in range(1, n):
        for j in range(i, n):
            out.append((f"x({i},{j})", chain_word(i, j), Root.eps(n, (1, i), (-1, j + 1))))
    for i in range(1, n + 1):
        weight = Root.eps(n, (1, i), (1, n)) if i < n else Root.eps(n, (2, n))
        out.append((f"x'({i},{n})", prime_chain_word(i, n), weight))
    for i in range(1, n):
        for j in range(i, n):
            out.append(
                (
                    f"[x({j},{n - 1}),x'({i},{n})]",
                    (chain_word(j, n - 1), prime_chain_word(i, n)),
                    Root.eps(n, (1, i), (1, j)),
                )
            )
    return out


# -- matrices ---------------------------------------------------------


def _unit(size: int, a: int, b: int) -> ImmutableMatrix:
    """E_{a,b} with 1-based indices."""
    return ImmutableMatrix(size, size, lambda r, c: 1 if (r, c) == (a - 1, b - 1) else 0)


def _diag(entries: Sequence[int]) -> ImmutableMatrix:
    return ImmutableMatrix.diag(*entries)


def _antidiag(k: int) -> ImmutableMatrix:
    return ImmutableMatrix(k, k, lambda r, c: 1 if r + c == k - 1 else 0)


def ambient_form(kind: str, n: int) -> ImmutableMatrix:
    if kind == "B":
        return _antidiag(2 * n + 1)
    k = _antidiag(n)
    z = ImmutableMatrix.zeros(n, n)
    return ImmutableMatrix.vstack(ImmutableMatrix.hstack(z, k), ImmutableMatrix.hstack(-k, z))


def _cartan_vector(kind: str, i: int, n: int) -> List[int]:
    a = [0] * n
    if i < n:
        a[i - 1], a[i] = 1, -1
    else:
        a[n - 1] = 2 if kind == "B" else 1
    return a


def generator_matrices(kind: str, n: int) -> Dict[str, ImmutableMatrix]:
    _check(kind, n)
    gens: Dict[str, ImmutableMatrix] = {}
    if kind == "B":
        size = 2 * n + 1
        for i in range(1, n):
            gens[f"x{i}"] = _unit(size, i, i + 1) - _unit(size, size - i, size + 1 - i)
        gens[f"x{n}"] = _unit(size, n, n + 1) - _unit(size, n + 1, n + 2)
        for i in range(1, n + 1):
            a = _cartan_vector(kind, i, n)
            gens[f"h{i}"] = _diag(a + [0] + [-x for x in reversed(a)])
        return gens
    size = 2 * n
    for i in range(1, n):
        gens[f"x{i}"] = _unit(size, i, i + 1) - _unit(size, size - i, size + 1 - i)
    gens[f"x'{n}"] = _unit(size, n, n + 1)
    for i in range(1, n + 1):
        a = _cartan_vector(kind, i, n)
        gens[h_name(kind, i, n)] = _diag(a + [-x for x in reversed(a)])
    return gens


def _commutator(a: ImmutableMatrix, b: ImmutableMatrix) -> ImmutableMatrix:
    return a * b - b * a


def _evaluate(word: Word, gens: Mapping[str, ImmutableMatrix]) -> ImmutableMatrix:
    if isinstance(word, str):
        return gens[word]
    return _commutator(_evaluate(word[0], gens), _evaluate(word[1], gens))


def _flat(m: ImmutableMatrix) -> List:
    return list(m)


@dataclass(frozen=True)
class MatrixLieModel:
    kind: str
    n: int
    form: ImmutableMatrix
    generators: Tuple[Tuple[str, ImmutableMatrix], ...]
    labels: Tuple[str, ...]
    words: Tuple[Word, ...]
    weights: Tuple[Optional[Root], ...]
    basis: Tuple[ImmutableMatrix, ...]

    @property
    def size(self) -> int:
        return self.form.rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    def generator(self, name: str) -> ImmutableMatrix:
        return dict(self.generators)[name]

    def bracket(self, a: ImmutableMatrix, b: ImmutableMatrix) -> ImmutableMatrix:
        return _commutator(a, b)

    def evaluate(self, word: Word) -> ImmutableMatrix:
        return _evaluate(word, dict(self.generators))

    def in_ambient(self, m: ImmutableMatrix) -> bool:
        return (m.T * self.form + self.form * m).is_zero_matrix

    def coordinates(self, m: ImmutableMatrix) -> Tuple[Fraction, ...]:
        """Coordinates of m in the word basis."""
        fld = get_field(0)
        b = fld.hstack(
            [ImmutableMatrix(self.size * self.size, 1, _flat(x)) for x in self.basis],
            self.size * self.size,
        )
        y = ImmutableMatrix(self.size * self.size, 1, _flat(m))
        sol = fld.solve_columns(b, y)
        return tuple(to_fraction(sol[k, 0]) for k in range(sol.rows))

    def to_lie_algebra(self) -> LieAlgebra:
        sc = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                coords = self.coordinates(self.bracket(self.basis[i], self.basis[j]))
                terms = {k: c for k, c in enumerate(coords) if c}
                if terms:
                    sc[(i, j)] = terms
        return LieAlgebra(self.labels, sc, name=f"b_{self.kind}({self.n})")


def _relation_residual(rel: Relation, evaluate) -> object:
    _, _, lhs, rhs = rel
    value = evaluate(lhs)
    for coef, word in rhs:
        value = value - coef * evaluate(word)
    return value


def check_relations(model: MatrixLieModel) -> List[Tuple[str, str, bool]]:
    """(relation id, instance, holds) for every (B*) or (C*) instance."""
    out = []
    for rel in relation_instances(model.kind, model.n):
        residual = _relation_residual(rel, model.evaluate)
        out.append((rel[0], rel[1], residual.is_zero_matrix))
    return out


@lru_cache(maxsize=None)
def build_borel(kind: str, n: int) -> MatrixLieModel:
    _check(kind, n)
    gens = generator_matrices(kind, n)
    form = ambient_form(kind, n)
    words = model_words(kind, n)
    basis = tuple(_evaluate(w, gens) for _, w, _ in words)
    model = MatrixLieModel(
        kind=kind,
        n=n,
        form=form,
        generators=tuple(gens.items()),
        labels=tuple(lbl for lbl, _, _ in words),
        words=tuple(w for _, w, _ in words),
        weights=tuple(wt for _, _, wt in words),
        basis=basis,
    )
    for rel_id, instance, holds in check_relations(model):
        if not holds:
            raise ModelRelationError(f"type {kind} model violates {rel_id}: {instance}")
    for label, m in zip(model.labels, basis):
        if m.is_zero_matrix:
            raise ModelRelationError(f"basis word {label} evaluates to zero")
        if not model.in_ambient(m):
            raise ModelRelationError(f"{label} leaves the ambient algebra")
        if not m.is_upper:
            raise ModelRelationError(f"{label} is not upper triangular")
    fld = get_field(0)
    rank = fld.rank(fld.from_rows([_flat(m) for m in basis]))
    if rank != n * n + n:
        raise ModelRelationError(f"type {kind} basis words span {rank}, expected {n * n + n}")
    # closed under bracket: raises if a bracket leaves the span
    try:
        model.to_lie_algebra()
    except ValueError as exc:
        raise ModelRelationError(f"type {kind} word span is not a subalgebra") from exc
    logger.debug("built b_%s(%d), dim %d", kind, n, model.dim)
    return model


def root_space_basis(model: MatrixLieModel) -> Dict[Root, str]:
    """
    Root -> basis word label. Each non-Cartan word must be a simultaneous
    ad(h)-eigenvector whose weight, read in eps-coordinates, is its root.
    """
    n = model.n
    hs = [model.generator(h_name(model.kind, i, n)) for i in range(1, n + 1)]
    e_inv = ImmutableMatrix(weight_matrix(model.kind, n).tolist()).inv()
    plus = build_root_system(n).system(f"{model.kind}+")
    out: Dict[Root, str] = {}
    for label, m, expected in zip(model.labels, model.basis, model.weights):
        if expected is None:
            continue
        values = []
        for h in hs:
            image = _commutator(h, m)
            coords = model.coordinates(image)
            k = model.labels.index(label)
            if any(c for idx, c in enumerate(coords) if idx != k):
                raise ModelRelationError(f"{label} is not an ad(h)-eigenvector")
            values.append(coords[k])
        eps = ImmutableMatrix(1, n, values) * e_inv
        if any(to_fraction(c).denominator != 1 for c in eps):
            raise ModelRelationError(f"{label} has a non-integral weight {list(eps)}")
        root = Root(tuple(int(c) for c in eps))
        if root != expected or root not in plus:
            raise ModelRelationError(f"{label} has weight {root}, expected {expected}")
        if root in out:
            raise ModelRelationError(f"root {root} carried by both {out[root]} and {label}")
        out[root] = label
    if set(out) != set(plus):
        raise ModelRelationError(f"root spaces cover {len(out)} of {len(plus)} positive roots")
    return out


@dataclass(frozen=True)
class IsoReport:
    ok: bool
    source_rank: int
    model_rank: int
    words: int
    witness: str = ""


def quotient_iso_check(
    q: LieAlgebra,
    model: MatrixLieModel,
    assignment: Mapping[str, LieElement],
    require_full: bool = True,
) -> IsoReport:
    """
    Match the model's basis words evaluated in q (generators given by
    assignment) against the same words in the model. The words must be
    independent on both sides and the induced map must respect brackets.
    With require_full the words must also span q.
    """
    count = len(model.words)
    try:
        vs = [q.evaluate(w, assignment) for w in model.words]
    except KeyError as exc:
        return IsoReport(False, 0, model.dim, count, f"unassigned generator {exc}")
    fld = get_field(0)
    source = fld.from_rows([list(q.vector(v)) for v in vs], q.dim)
    source_rank = fld.rank(source)
    model_rank = model.dim
    if require_full and q.dim != model.dim:
        return IsoReport(False, source_rank, model_rank, count, f"dim {q.dim} != {model.dim}")
    if source_rank != count:
        dependent = _first_dependent(q, vs, model.labels)
        return IsoReport(False, source_rank, model_rank, count, f"word {dependent} is dependent in the source")
    basis_cols = source.T
    for a in range(count):
        for b in range(a + 1, count):
            lhs = q.bracket(vs[a], vs[b])
            y = fld.matrix(q.dim, 1, q.vector(lhs))
            try:
                coeffs = fld.solve_columns(basis_cols, y)
            except ValueError:
                return IsoReport(
                    False, source_rank, model_rank, count,
                    f"[{model.labels[a]}, {model.labels[b]}] leaves the span of the words",
                )
            image = model.bracket(model.basis[a], model.basis[b])
            expected = ImmutableMatrix.zeros(model.size, model.size)
            for k in range(count):
                c = coeffs[k, 0]
                if c:
                    expected = expected + c * model.basis[k]
            if not (image - expected).is_zero_matrix:
                return IsoReport(
                    False, source_rank, model_rank, count,
                    f"bracket of {model.labels[a]} and {model.labels[b]} differs",
                )
    return IsoReport(True, source_rank, model_rank, count)


def _first_dependent(q: LieAlgebra, vs: Sequence[LieElement], labels: Sequence[str]) -> str:
    fld = get_field(0)
    rank = 0
    for k, v in enumerate(vs):
        rows = [list(q.vector(x)) for x in vs[: k + 1]]
        r = fld.rank(fld.from_rows(rows, q.dim))
        if r == rank:
            return labels[k]
        rank = r
    return ""
