# src/lie/riedtmann.py
"""
The Riedtmann Lie algebra L(A) of Λ(n-1,1,1), its Cartan extension L~(A),
and the comparison map phi from the BC_n presentation.

Basis of L(A): the indecomposable labels. L~(A) adds h(1)..h(n), where h(a)
stands for h_{S_a} and acts by [h(a), X] = (S_a, X)_A X.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Rational, Symbol, latex

from src.audit.check_report import BUDGET_EXCEEDED, FAIL, CheckRecord, CheckReport
from src.lie.borel import (
    build_borel,
    chain_word,
    mixed_relation_instances,
    model_words,
    prime_chain_word,
    quotient_iso_check,
    relation_instances,
)
from src.lie.liecore import (
    LieAlgebra,
    LieElement,
    Word,
    ideal_closure,
    is_ideal,
    jacobi_check,
    quotient_map,
    span_basis,
    span_dim,
    subalgebra_closure,
    weight_decomposition,
)
from src.quiver.hall_oracle import (
    DEFAULT_BUDGET,
    DEFAULT_PRIMES,
    BudgetExceededError,
    NonPolynomialCountError,
    hall_bracket_oracle,
    oracle_evidence,
)
from src.quiver.quiverrep import (
    IndecType,
    all_indecomposables,
    check_rank,
    dim_vector,
    form_matrix,
    gabriel_root,
    simple,
    simple_prime,
)
from src.roots.rootsys import Root, build_root_system, weight_matrix
from src.utils.field import get_field, to_fraction

logger = logging.getLogger(__name__)


def h_label(a: int) -> str:
    return f"h({a})"


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def _l_bracket(x: IndecType, y: IndecType) -> Dict[str, int]:
    """[x, y] in L(A), for x of kind W or both of kind V; empty otherwise."""
    out: Dict[str, int] = {}

    def add(t: IndecType, c: int):
        if c:
            out[t.label] = out.get(t.label, 0) + c

    if x.kind == "W":
        i, j = x.i, x.j
        if y.kind == "W":
            l, m = y.i, y.j
            add(IndecType.W(i, m), _delta(j + 1, l))
            add(IndecType.W(l, j), -_delta(m + 1, i))
        elif y.kind == "V":
            if j + 1 == y.i:
                add(IndecType.V(i), 1)
        else:
            l, m = y.i, y.j
            if j + 1 == m:
                add(IndecType.U(l, i), 1)
            if j + 1 == l:
                add(IndecType.U(i, m), 1)
    elif x.kind == "V" and y.kind == "V":
        add(IndecType.U(y.i, x.i), 1)
        add(IndecType.U(x.i, y.i), -1)
    return {k: v for k, v in out.items() if v}


def indec_bracket(x: IndecType, y: IndecType) -> Dict[str, int]:
    if x.kind == "W" or (x.kind == "V" and y.kind == "V"):
        return _l_bracket(x, y)
    if y.kind == "W":
        return {k: -v for k, v in _l_bracket(y, x).items()}
    return {}


@lru_cache(maxsize=None)
def build_L(n: int) -> LieAlgebra:
    check_rank(n)
    basis = [t.label for t in all_indecomposables(n)]

    def rule(a: str, b: str):
        return indec_bracket(IndecType.parse(a), IndecType.parse(b))

    return LieAlgebra.from_rule(basis, rule, name=f"L({n})")


def _pairing(form, a: int, t: IndecType, n: int) -> Fraction:
    d = dim_vector(t, n)
    return sum((form[a - 1][b] * d[b] for b in range(n)), Fraction(0))


@dataclass(frozen=True)
class LTilde:
    n: int
    algebra: LieAlgebra
    form: Tuple[Tuple[Fraction, ...], ...]

    def h(self, a: int) -> LieElement:
        return self.algebra.e(h_label(a))

    def module(self, t: IndecType) -> LieElement:
        return self.algebra.e(t.label)

    def pairing(self, a: int, t: IndecType) -> Fraction:
        """(S_a, t)_A."""
        return _pairing(self.form, a, t, self.n)


@lru_cache(maxsize=None)
def build_LTilde(n: int) -> LTilde:
    check_rank(n)
    form = form_matrix(n)
    indecs = {t.label: t for t in all_indecomposables(n)}
    hs = {h_label(a): a for a in range(1, n + 1)}
    basis = list(indecs) + list(hs)

    def rule(a: str, b: str):
        if a in indecs and b in indecs:
            return indec_bracket(indecs[a], indecs[b])
        if a in hs and b in indecs:
            return {b: _pairing(form, hs[a], indecs[b], n)}
        if a in indecs and b in hs:
            return {a: -_pairing(form, hs[b], indecs[a], n)}
        return {}

    algebra = LieAlgebra.from_rule(basis, rule, name=f"L~({n})")
    return LTilde(n=n, algebra=algebra, form=form)


# -- phi --------------------------------------------------------------


def generator_assignment(n: int) -> Dict[str, LieElement]:
    """phi on generators, keyed by the generator names of the Borel models."""
    lt = build_LTilde(n)
    out: Dict[str, LieElement] = {}
    for i in range(1, n):
        out[f"x{i}"] = lt.module(simple(i, n))
        out[f"h{i}"] = lt.h(i)
    out[f"x{n}"] = lt.module(simple(n, n))
    out[f"x'{n}"] = lt.module(simple_prime(n))
    out[f"h{n}"] = lt.h(n) * 2
    out[f"h'{n}"] = lt.h(n)
    return out


def basis_words(n: int) -> List[Tuple[str, Word]]:
    """The (3n^2+3n)/2 basis words of the BC_n Borel algebra."""
    out: List[Tuple[str, Word]] = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            out.append((f"x({i},{j})", chain_word(i, j)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append((f"[x({i},{n}),x({j},{n})]", (chain_word(i, n), chain_word(j, n))))
    for i in range(1, n + 1):
        out.append((f"x'({i},{n})", prime_chain_word(i, n)))
    for i in range(1, n):
        for j in range(i, n):
            out.append((f"[x({j},{n - 1}),x'({i},{n})]", (chain_word(j, n - 1), prime_chain_word(i, n))))
    for i in range(1, n + 1):
        out.append((f"h{i}", f"h{i}"))
    return out


def expected_images(n: int) -> Dict[str, LieElement]:
    """Closed forms of phi on the basis words."""
    U, V, W = IndecType.U, IndecType.V, IndecType.W
    out: Dict[str, LieElement] = {}

    def el(*terms):
        d: Dict[str, int] = {}
        for c, t in terms:
            d[t.label] = d.get(t.label, 0) + c
        return LieElement(d)

    for i in range(1, n + 1):
        for j in range(i, n):
            out[f"x({i},{j})"] = el((1, W(i, j)))
        out[f"x({i},{n})"] = el((1, V(i)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out[f"[x({i},{n}),x({j},{n})]"] = el((1, U(j, i)), (-1, U(i, j)))
    for i in range(1, n):
        out[f"x'({i},{n})"] = el((1, U(i, n)), (1, U(n, i)))
    out[f"x'({n},{n})"] = el((1, U(n, n)))
    for i in range(1, n):
        for j in range(i, n):
            out[f"[x({j},{n - 1}),x'({i},{n})]"] = el((1, U(i, j)), (1, U(j, i)))
    for i in range(1, n):
        out[f"h{i}"] = LieElement({h_label(i): 1})
    out[f"h{n}"] = LieElement({h_label(n): 2})
    return out


@dataclass(frozen=True)
class PhiMap:
    n: int
    labels: Tuple[str, ...]
    words: Tuple[Word, ...]
    images: Tuple[LieElement, ...]
    determinant: Fraction

    def image(self, label: str) -> LieElement:
        return self.images[self.labels.index(label)]

    def matrix(self) -> ImmutableMatrix:
        """Rows: phi-images in the L~(A) basis."""
        lt = build_LTilde(self.n).algebra
        return get_field(0).from_rows([list(lt.vector(x)) for x in self.images], lt.dim)


@lru_cache(maxsize=None)
def phi_images(n: int) -> PhiMap:
    lt = build_LTilde(n).algebra
    assignment = generator_assignment(n)
    words = basis_words(n)
    images = tuple(lt.evaluate(w, assignment) for _, w in words)
    fld = get_field(0)
    det = fld.det(fld.from_rows([list(lt.vector(x)) for x in images], lt.dim))
    return PhiMap(
        n=n,
        labels=tuple(lbl for lbl, _ in words),
        words=tuple(w for _, w in words),
        images=images,
        determinant=det,
    )


def recover_in_phi_basis(n: int) -> Dict[str, Dict[str, Fraction]]:
    """Each L~(A) basis label as a combination of phi-images."""
    phi = phi_images(n)
    lt = build_LTilde(n).algebra
    inv = get_field(0).inverse(phi.matrix())
    out = {}
    for k, label in enumerate(lt.basis):
        row = {phi.labels[m]: to_fraction(inv[k, m]) for m in range(inv.cols) if inv[k, m] != 0}
        out[label] = row
    return out


def _is_power_of_two(x: int) -> bool:
    return x > 0 and (x & (x - 1)) == 0


# -- verification suites ----------------------------------------------


def structure_check(n: int) -> CheckReport:
    report = CheckReport(suite="structure")
    L, lt = build_L(n), build_LTilde(n)
    for alg in (L, lt.algebra):
        res = jacobi_check(alg)
        report.check("jacobi", alg.name, True, res.ok if res.ok else f"fails on {res.triple}")
    values = {c for terms in L.structure_constants().values() for c in terms.values()}
    report.check("L_constants_in_unit_set", f"n={n}", True, values <= {Fraction(1), Fraction(-1)})
    report.check("dim_L", f"n={n}", (3 * n * n + n) // 2, L.dim)
    report.check("dim_LTilde", f"n={n}", (3 * n * n + 3 * n) // 2, lt.algebra.dim)
    wrong = []
    for t in all_indecomposables(n):
        for a in range(1, n + 1):
            expected = lt.module(t) * (-lt.pairing(a, t))
            computed = lt.algebra.bracket(lt.module(t), lt.h(a))
            if computed != expected:
                wrong.append([f"[{t.label},{h_label(a)}]", str(expected), str(computed)])
    report.check("h_antisymmetry", f"n={n}", [], wrong)
    return report


def verify_presentation(n: int) -> CheckReport:
    """Both Borel presentations plus the mixed relations, evaluated on phi-images inside L~(A)."""
    check_rank(n)
    lt = build_LTilde(n).algebra
    assignment = generator_assignment(n)
    report = CheckReport(suite="presentation")
    rels = relation_instances("B", n) + relation_instances("C", n) + mixed_relation_instances(n)
    for rel_id, instance, lhs, rhs in rels:
        value = lt.evaluate(lhs, assignment)
        for coef, word in rhs:
            value = value - lt.evaluate(word, assignment) * coef
        report.check(rel_id, instance, "0", str(value))
    logger.info("presentation n=%d: %s", n, report.counts())
    return report


def verify_bracket_oracle(
    n: int,
    primes: Sequence[int] = DEFAULT_PRIMES,
    budget: int = DEFAULT_BUDGET,
    pairs: Optional[Sequence[Tuple[IndecType, IndecType]]] = None,
) -> CheckReport:
    """Brute-force Hall brackets against the L(A) structure constants."""
    L = build_L(n)
    report = CheckReport(suite="oracle")
    if pairs is None:
        mods = all_indecomposables(n)
        pairs = [(x, y) for x in mods for y in mods]
    for x, y in pairs:
        instance = f"[{x.label},{y.label}]"
        table = L.bracket(L.e(x.label), L.e(y.label))
        try:
            oracle = hall_bracket_oracle(x, y, n, primes, budget)
        except BudgetExceededError as exc:
            report.add(CheckRecord("hall_bracket", instance, str(table), str(exc), BUDGET_EXCEEDED))
            continue
        except NonPolynomialCountError as exc:
            report.add(CheckRecord("hall_bracket", instance, str(table), str(exc), FAIL))
            continue
        if oracle == table:
            report.check("hall_bracket", instance, str(table), str(oracle))
        else:
            evidence = oracle_evidence(x, y, n, primes, budget)
            report.add(
                CheckRecord("hall_bracket", instance, str(table), {"bracket": str(oracle), "counts": evidence}, FAIL)
            )
    logger.info("oracle n=%d: %s", n, report.counts())
    return report


def _cartan_h(n: int) -> List[LieElement]:
    lt = build_LTilde(n)
    return [lt.h(a) for a in range(1, n)] + [lt.h(n) * 2]


def _to_eps(weight: Sequence[Fraction], n: int) -> Optional[Root]:
    e_inv = ImmutableMatrix(weight_matrix("B", n).tolist()).inv()
    eps = ImmutableMatrix(1, n, [Rational(w.numerator, w.denominator) for w in weight]) * e_inv
    values = [to_fraction(c) for c in eps]
    if any(v.denominator != 1 for v in values):
        return None
    return Root(tuple(int(v) for v in values))


def cartan_decomposition_check(n: int) -> CheckReport:
    lt = build_LTilde(n)
    alg = lt.algebra
    report = CheckReport(suite="cartan")
    groups = weight_decomposition(alg, _cartan_h(n))
    by_root: Dict[Root, Tuple[LieElement, ...]] = {}
    for weight, elems in groups.items():
        root = _to_eps(weight, n)
        if root is None:
            report.check("integral_weight", str(weight), "integral", "non-integral")
            continue
        by_root[root] = elems
    zero = Root.zero(n)
    plus = build_root_system(n).phi_plus_BC
    report.check("weight_set", f"n={n}", sorted(str(r) for r in plus | {zero}), sorted(str(r) for r in by_root))
    report.check("dim_g0", f"n={n}", n, len(by_root.get(zero, ())))
    report.check(
        "g0_is_cartan",
        f"n={n}",
        sorted(h_label(a) for a in range(1, n + 1)),
        sorted(lbl for e in by_root.get(zero, ()) for lbl in e.support()),
    )
    for r in sorted(plus):
        expected = 2 if sorted(r.coeffs)[-2:] == [1, 1] else 1
        report.check("root_multiplicity", str(r), expected, len(by_root.get(r, ())))
    for t in all_indecomposables(n):
        located = [r for r, elems in by_root.items() if LieElement.basis(t.label) in elems]
        report.check("gabriel_root", t.label, str(gabriel_root(t, n)), str(located[0]) if located else "missing")
    logger.info("cartan n=%d: %s", n, report.counts())
    return report


def ideal_spans(n: int) -> Tuple[List[LieElement], List[LieElement]]:
    """span{U(i,j)+U(j,i)} and span{V(i)} + span{U(j,i)-U(i,j)}."""
    U, V = IndecType.U, IndecType.V
    first, second = [], []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            first.append(LieElement({U(i, j).label: 1}) + LieElement({U(j, i).label: 1}))
    for i in range(1, n + 1):
        second.append(LieElement({V(i).label: 1}))
        for j in range(i + 1, n + 1):
            second.append(LieElement({U(j, i).label: 1, U(i, j).label: -1}))
    return first, second


def _projected_assignment(qm, n: int) -> Dict[str, LieElement]:
    assignment = generator_assignment(n)
    return {name: qm.project(x) for name, x in assignment.items()}


def ideal_quotient_check(n: int) -> CheckReport:
    lt = build_LTilde(n).algebra
    report = CheckReport(suite="ideals")
    first, second = ideal_spans(n)
    half = n * (n + 1) // 2
    for name, span, kind in (("U+U", first, "B"), ("V,U-U", second, "C")):
        report.check("is_ideal", name, True, is_ideal(lt, span_basis(lt, span)))
        report.check("ideal_dim", name, half, span_dim(lt, span))
        qm = quotient_map(lt, span)
        report.check("quotient_dim", name, n * n + n, qm.algebra.dim)
        iso = quotient_iso_check(qm.algebra, build_borel(kind, n), _projected_assignment(qm, n))
        report.check("quotient_iso", f"{name} ~ b_{kind}", True, iso.ok if iso.ok else iso.witness)
    # the B-quotient must not match the C model
    qm = quotient_map(lt, first)
    iso = quotient_iso_check(qm.algebra, build_borel("C", n), _projected_assignment(qm, n))
    report.check("negative_control", "U+U ~ b_C", False, iso.ok)
    logger.info("ideals n=%d: %s", n, report.counts())
    return report


def ideal_generation_check(n: int) -> CheckReport:
    """The ideals generated by S'_n and by S_n coincide with the explicit spans."""
    lt = build_LTilde(n)
    alg = lt.algebra
    report = CheckReport(suite="ideal_generation")
    first, second = ideal_spans(n)
    for name, gen, span in (
        ("S'_n", simple_prime(n), first),
        ("S_n", simple(n, n), second),
    ):
        closure = ideal_closure(alg, [lt.module(gen)])
        report.check("ideal_closure_dim", name, n * (n + 1) // 2, len(closure))
        report.check("ideal_closure_span", name, span_basis(alg, span), closure)
    return report


def generation_check(n: int) -> CheckReport:
    lt = build_LTilde(n)
    L = build_L(n)
    report = CheckReport(suite="generation")
    assignment = generator_assignment(n)
    gens = [assignment[k] for k in sorted(assignment)]
    report.check(
        "closure_LTilde", f"n={n}", (3 * n * n + 3 * n) // 2, len(subalgebra_closure(lt.algebra, gens))
    )
    l_gens = [L.e(simple(i, n).label) for i in range(1, n + 1)] + [L.e(simple_prime(n).label)]
    report.check("closure_L", f"n={n}", (3 * n * n + n) // 2, len(subalgebra_closure(L, l_gens)))
    return report


def integrality_check(n: int) -> CheckReport:
    report = CheckReport(suite="integrality")
    phi = phi_images(n)
    exponent = n * (n - 1) // 2 + n
    report.check("phi_determinant", f"n={n}", 2**exponent, abs(phi.determinant))
    forward = {c.denominator for x in phi.images for c in x.terms.values()}
    report.check("phi_integral", f"n={n}", True, forward <= {1})
    recovered = recover_in_phi_basis(n)
    dens = sorted({c.denominator for row in recovered.values() for c in row.values()})
    report.check("inverse_denominators_powers_of_two", f"n={n}", True, all(_is_power_of_two(d) for d in dens))
    expected = expected_images(n)
    for label, image in zip(phi.labels, phi.images):
        report.check("phi_image", label, str(expected[label]), str(image))
    return report


def bc_sum_check(n: int) -> CheckReport:
    """Type-B and type-C root vectors together span all of L(A)."""
    lt = build_LTilde(n).algebra
    assignment = generator_assignment(n)
    report = CheckReport(suite="bc_sum")
    vectors = []
    for kind in ("B", "C"):
        for _, word, weight in model_words(kind, n):
            if weight is not None:
                vectors.append(lt.evaluate(word, assignment))
    indecs = [LieElement.basis(t.label) for t in all_indecomposables(n)]
    report.check("bc_sum_dim", f"n={n}", (3 * n * n + n) // 2, span_dim(lt, vectors))
    report.check("bc_sum_span", f"n={n}", span_basis(lt, indecs), span_basis(lt, vectors))
    return report


def borel_subalgebra_check(kind: str, n: int) -> CheckReport:
    """The subalgebra of L~(A) generated by one type's generators is that type's Borel."""
    lt = build_LTilde(n).algebra
    model = build_borel(kind, n)
    assignment = generator_assignment(n)
    names = [name for name, _ in model.generators]
    report = CheckReport(suite=f"borel_{kind}")
    closure = subalgebra_closure(lt, [assignment[k] for k in names])
    report.check("closure_dim", f"{kind} n={n}", n * n + n, len(closure))
    iso = quotient_iso_check(lt, model, assignment, require_full=False)
    report.check("iso", f"{kind} n={n}", True, iso.ok if iso.ok else iso.witness)
    return report


def bracket_table_latex(n: int) -> str:
    """Nonzero brackets of L(A) as a LaTeX longtable-free tabular."""
    L = build_L(n)
    lines = ["\\begin{tabular}{lll}", "$X$ & $Y$ & $[X,Y]$ \\\\", "\\hline"]
    for (i, j), terms in sorted(L.structure_constants().items()):
        value = sum(
            (Rational(c.numerator, c.denominator) * _symbol(L.basis[k]) for k, c in terms.items()),
            Rational(0),
        )
        lines.append(f"${L.basis[i]}$ & ${L.basis[j]}$ & ${latex(value)}$ \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _symbol(label: str):
    kind, rest = label[0], label[2:-1]
    return Symbol(f"{kind}_{{{rest}}}")


def run_lie_suite(n: int) -> CheckReport:
    """Every L(A)-side check except the oracle."""
    report = CheckReport(suite="lie")
    parts = [
        structure_check(n),
        verify_presentation(n),
        generation_check(n),
        integrality_check(n),
        cartan_decomposition_check(n),
        bc_sum_check(n),
        borel_subalgebra_check("B", n),
        borel_subalgebra_check("C", n),
    ]
    if n >= 2:
        parts += [ideal_quotient_check(n), ideal_generation_check(n)]
    for part in parts:
        report.merge(part)
    return report
