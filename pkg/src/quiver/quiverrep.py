# src/quiver/quiverrep.py
"""
Representations of the bound quiver of Lambda(n-1,1,1):

    1 -> 2 -> ... -> n   with a loop alpha at n and alpha^2 = 0.

Vertices are 1-based in every public signature. A Rep stores one matrix
per arrow: maps[k-1] is the arrow k -> k+1 (k < n), maps[n-1] is alpha.

Indecomposables (complete list, (3n^2+n)/2 of them):
  U(i,j)  1 <= i,j <= n
  V(i)    1 <= i <= n
  W(i,j)  1 <= i <= j <= n-1
"""

import logging
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import ImmutableMatrix, Matrix

from src.roots.rootsys import InvalidRankError, Root, root_from_simple_coords
from src.utils.field import ExactField, get_field, to_fraction

logger = logging.getLogger(__name__)

KINDS = ("U", "V", "W")
_LABEL_RE = re.compile(r"^\s*([UVW])\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


class InvalidIndecError(ValueError):
    pass


class FieldMismatchError(ValueError):
    pass


class RelationError(ValueError):
    pass


class UnrecognizedModuleError(RuntimeError):
    pass


def check_rank(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise InvalidRankError(f"rank must be a positive integer, got {n!r}")


@dataclass(frozen=True, order=True)
class IndecType:
    kind: str
    i: int
    j: int = 0

    @classmethod
    def U(cls, i: int, j: int) -> "IndecType":
        return cls("U", i, j)

    @classmethod
    def V(cls, i: int) -> "IndecType":
        return cls("V", i, 0)

    @classmethod
    def W(cls, i: int, j: int) -> "IndecType":
        return cls("W", i, j)

    @classmethod
    def parse(cls, label: str) -> "IndecType":
        m = _LABEL_RE.match(label)
        if not m:
            raise InvalidIndecError(f"cannot parse indecomposable label {label!r}")
        kind, i, j = m.group(1), int(m.group(2)), m.group(3)
        if kind == "V":
            if j is not None:
                raise InvalidIndecError(f"V takes one index: {label!r}")
            return cls.V(i)
        if j is None:
            raise InvalidIndecError(f"{kind} takes two indices: {label!r}")
        return cls(kind, i, int(j))

    @property
    def label(self) -> str:
        if self.kind == "V":
            return f"V({self.i})"
        return f"{self.kind}({self.i},{self.j})"

    def __str__(self) -> str:
        return self.label

    def validate(self, n: int) -> "IndecType":
        check_rank(n)
        ok = False
        if self.kind == "U":
            ok = 1 <= self.i <= n and 1 <= self.j <= n
        elif self.kind == "V":
            ok = 1 <= self.i <= n and self.j == 0
        elif self.kind == "W":
            ok = 1 <= self.i <= self.j <= n - 1
        if not ok:
            raise InvalidIndecError(f"{self.label} is not an indecomposable for n={n}")
        return self


Multiset = Tuple[IndecType, ...]


@lru_cache(maxsize=None)
def all_indecomposables(n: int) -> Tuple[IndecType, ...]:
    check_rank(n)
    out = [IndecType.U(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    out += [IndecType.V(i) for i in range(1, n + 1)]
    out += [IndecType.W(i, j) for i in range(1, n) for j in range(i, n)]
    return tuple(sorted(out))


def simple(i: int, n: int) -> IndecType:
    """S_i: W(i,i) for i < n, V(n) for i = n."""
    check_rank(n)
    if not 1 <= i <= n:
        raise InvalidIndecError(f"no simple module at vertex {i} for n={n}")
    return IndecType.W(i, i) if i < n else IndecType.V(n)


def simple_prime(n: int) -> IndecType:
    """S'_n, the two-dimensional indecomposable at vertex n."""
    check_rank(n)
    return IndecType.U(n, n)


def normalize_multiset(types: Union[IndecType, Iterable[IndecType]]) -> Multiset:
    if isinstance(types, IndecType):
        return (types,)
    return tuple(sorted(types))


def multiset_label(types: Multiset) -> str:
    if not types:
        return "0"
    return " + ".join(t.label for t in types)


@dataclass(frozen=True)
class BoundQuiver:
    n: int
    arrows: Tuple[Tuple[int, int], ...]
    relation: str = "alpha^2"

    @classmethod
    def of_rank(cls, n: int) -> "BoundQuiver":
        check_rank(n)
        arrows = tuple((k, k + 1) for k in range(1, n)) + ((n, n),)
        return cls(n=n, arrows=arrows)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def loop_index(self) -> int:
        return self.n - 1

    def incoming(self, v: int) -> Tuple[int, ...]:
        return tuple(a for a, (_, t) in enumerate(self.arrows) if t == v)

    def outgoing(self, v: int) -> Tuple[int, ...]:
        return tuple(a for a, (s, _) in enumerate(self.arrows) if s == v)


@dataclass(frozen=True)
class Rep:
    dims: Tuple[int, ...]
    maps: Tuple[ImmutableMatrix, ...]
    field: ExactField = dc_field(default_factory=get_field)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "maps", tuple(ImmutableMatrix(m) for m in self.maps))
        n = len(self.dims)
        check_rank(n)
        if any(d < 0 for d in self.dims):
            raise RelationError(f"negative dimension in {self.dims}")
        if len(self.maps) != n:
            raise RelationError(f"expected {n} arrow matrices, got {len(self.maps)}")
        for a, (s, t) in enumerate(self.quiver.arrows):
            want = (self.dims[t - 1], self.dims[s - 1])
            if tuple(self.maps[a].shape) != want:
                raise RelationError(
                    f"arrow {s}->{t}: matrix shape {self.maps[a].shape}, expected {want}"
                )
        loop = self.maps[-1]
        if not self.field.is_zero(self.field.mul(loop, loop)):
            raise RelationError("loop matrix does not square to zero")

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def quiver(self) -> BoundQuiver:
        return BoundQuiver.of_rank(len(self.dims))

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def arrow(self, s: int, t: int) -> ImmutableMatrix:
        if t == s + 1 and 1 <= s < self.n:
            return self.maps[s - 1]
        if s == t == self.n:
            return self.maps[-1]
        raise KeyError(f"no arrow {s}->{t}")

    def path_map(self, s: int, t: int) -> ImmutableMatrix:
        """Composite of the linear arrows s -> s+1 -> ... -> t (identity if s == t)."""
        out = self.field.identity(self.dims[s - 1])
        for k in range(s, t):
            out = self.field.mul(self.maps[k - 1], out)
        return out

    def direct_sum(self, other: "Rep") -> "Rep":
        return direct_sum([self, other])


def zero_rep(n: int, field: ExactField = None) -> Rep:
    field = field or get_field(0)
    maps = [field.zeros(0, 0) for _ in range(n)]
    return Rep(dims=(0,) * n, maps=tuple(maps), field=field)


def direct_sum(reps: Sequence[Rep]) -> Rep:
    reps = list(reps)
    if not reps:
        raise ValueError("direct sum of no representations needs a rank; use zero_rep")
    n, fld = reps[0].n, reps[0].field
    for r in reps[1:]:
        if r.n != n:
            raise ValueError(f"rank mismatch {r.n} != {n}")
        if r.field != fld:
            raise FieldMismatchError(f"{r.field.name} != {fld.name}")
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(n))
    maps = tuple(fld.block_diag([r.maps[a] for r in reps]) for a in range(n))
    return Rep(dims=dims, maps=maps, field=fld)


def dim_vector(t: Union[IndecType, Rep], n: Optional[int] = None) -> Tuple[int, ...]:
    if isinstance(t, Rep):
        return t.dims
    if n is None:
        raise TypeError("dim_vector of an IndecType needs the rank n")
    t.validate(n)
    d = [0] * n
    if t.kind == "W":
        for v in range(t.i, t.j + 1):
            d[v - 1] = 1
    elif t.kind == "V":
        for v in range(t.i, n + 1):
            d[v - 1] = 1
    else:
        lo, hi = min(t.i, t.j), max(t.i, t.j)
        for v in range(lo, hi):
            d[v - 1] = 1
        for v in range(hi, n + 1):
            d[v - 1] = 2
    return tuple(d)


def multiset_dim_vector(types: Multiset, n: int) -> Tuple[int, ...]:
    total = np.zeros(n, dtype=np.int64)
    for t in types:
        total += np.array(dim_vector(t, n), dtype=np.int64)
    return tuple(int(x) for x in total)


def gabriel_root(t: IndecType, n: int) -> Root:
    """The Gabriel root of t, read off its dimension vector in simple-root coordinates."""
    return root_from_simple_coords(dim_vector(t, n))


@lru_cache(maxsize=None)
def _build_indec(t: IndecType, n: int, order: int) -> Rep:
    fld = get_field(order)
    dims = dim_vector(t, n)
    maps: List[ImmutableMatrix] = []
    for k in range(1, n):
        s, tgt = dims[k - 1], dims[k]
        if s == 0 or tgt == 0:
            maps.append(fld.zeros(tgt, s))
        elif s == tgt:
            maps.append(fld.identity(s))
        elif (s, tgt) == (1, 2):
            # U(i,j): e_1 when j <= i, e_2 when i < j
            col = (1, 0) if t.j <= t.i else (0, 1)
            maps.append(fld.matrix(2, 1, col))
        else:
            raise RelationError(f"unexpected dimension step {s}->{tgt} in {t.label}")
    last = dims[-1]
    if last == 2:
        maps.append(fld.from_rows([[0, 0], [1, 0]]))
    else:
        maps.append(fld.zeros(last, last))
    return Rep(dims=dims, maps=tuple(maps), field=fld)


def build_indec(t: IndecType, n: int, field: Union[ExactField, int] = 0) -> Rep:
    t.validate(n)
    order = field.order if isinstance(field, ExactField) else int(field)
    return _build_indec(t, n, order)


def build_module(types: Union[IndecType, Iterable[IndecType]], n: int, field=0) -> Rep:
    types = normalize_multiset(types)
    fld = field if isinstance(field, ExactField) else get_field(int(field))
    if not types:
        return zero_rep(n, fld)
    return direct_sum([build_indec(t, n, fld) for t in types])


# -- Hom spaces ---------------------------------------------------------


def hom_system(m: Rep, nrep: Rep) -> ImmutableMatrix:
    """
    Coefficient matrix of the intertwiner equations f_t M_a = N_a f_s,
    unknowns ordered vertex by vertex, row-major inside each f_v.
    """
    if m.field != nrep.field:
        raise FieldMismatchError(f"{m.field.name} vs {nrep.field.name}")
    if m.n != nrep.n:
        raise ValueError(f"rank mismatch {m.n} vs {nrep.n}")
    offsets = [0]
    for v in range(m.n):
        offsets.append(offsets[-1] + nrep.dims[v] * m.dims[v])
    nvars = offsets[-1]

    def var(v: int, r: int, c: int) -> int:
        return offsets[v - 1] + r * m.dims[v - 1] + c

    rows: List[Dict[int, object]] = []
    for a, (s, t) in enumerate(m.quiver.arrows):
        ma, na = m.maps[a], nrep.maps[a]
        for r in range(nrep.dims[t - 1]):
            for c in range(m.dims[s - 1]):
                eq: Dict[int, object] = {}
                for k in range(m.dims[t - 1]):
                    coef = ma[k, c]
                    if coef != 0:
                        idx = var(t, r, k)
                        eq[idx] = eq.get(idx, 0) + coef
                for k in range(nrep.dims[s - 1]):
                    coef = na[r, k]
                    if coef != 0:
                        idx = var(s, k, c)
                        eq[idx] = eq.get(idx, 0) - coef
                if any(v != 0 for v in eq.values()):
                    rows.append(eq)
    dense = [[row.get(x, 0) for x in range(nvars)] for row in rows]
    return m.field.from_rows(dense, cols=nvars) if dense else m.field.zeros(0, nvars)


def hom_dim(m: Rep, nrep: Rep) -> int:
    system = hom_system(m, nrep)
    return system.cols - m.field.rank(system)


@lru_cache(maxsize=None)
def _indec_hom_dim(s: IndecType, t: IndecType, n: int, order: int) -> int:
    return hom_dim(_build_indec(s, n, order), _build_indec(t, n, order))


def indec_hom_dim(s: IndecType, t: IndecType, n: int, field=0) -> int:
    order = field.order if isinstance(field, ExactField) else int(field)
    s.validate(n)
    t.validate(n)
    return _indec_hom_dim(s, t, n, order)


def multiset_hom_dim(xs: Multiset, ys: Multiset, n: int, field=0) -> int:
    return sum(indec_hom_dim(x, y, n, field) for x in xs for y in ys)


@lru_cache(maxsize=None)
def indec_fingerprint(t: IndecType, n: int, order: int = 0) -> Tuple[int, ...]:
    return tuple(_indec_hom_dim(s, t, n, order) for s in all_indecomposables(n))


def hom_fingerprint(rep: Rep) -> Tuple[int, ...]:
    """(hom_dim(L, rep)) over all indecomposables L, in canonical order."""
    n, order = rep.n, rep.field.order
    if rep.is_zero():
        return (0,) * len(all_indecomposables(n))
    return tuple(hom_dim(_build_indec(s, n, order), rep) for s in all_indecomposables(n))


def iso_type(rep: Rep) -> Multiset:
    """
    Decompose rep into indecomposables by matching its Hom-fingerprint.
    Fingerprints are additive, so the search subtracts candidate summands
    whose dimension vector and fingerprint both fit into what remains.
    """
    n, order = rep.n, rep.field.order
    if rep.is_zero():
        return ()
    types = all_indecomposables(n)
    fps = [np.array(indec_fingerprint(t, n, order), dtype=np.int64) for t in types]
    dvs = [np.array(dim_vector(t, n), dtype=np.int64) for t in types]
    target_fp = np.array(hom_fingerprint(rep), dtype=np.int64)
    target_dims = np.array(rep.dims, dtype=np.int64)

    chosen: List[IndecType] = []

    def search(start: int, rem_dims: np.ndarray, rem_fp: np.ndarray) -> bool:
        if not rem_dims.any():
            return not rem_fp.any()
        for idx in range(start, len(types)):
            if (dvs[idx] <= rem_dims).all() and (fps[idx] <= rem_fp).all():
                chosen.append(types[idx])
                if search(idx, rem_dims - dvs[idx], rem_fp - fps[idx]):
                    return True
                chosen.pop()
        return False

    if not search(0, target_dims, target_fp):
        raise UnrecognizedModuleError(
            f"no direct sum of indecomposables matches dims={rep.dims} "
            f"fingerprint={tuple(int(x) for x in target_fp)}"
        )
    return tuple(sorted(chosen))


def is_isomorphic(a: Rep, b: Rep) -> bool:
    return a.dims == b.dims and hom_fingerprint(a) == hom_fingerprint(b)


# -- Cartan matrix and the symmetric form ------------------------------


@lru_cache(maxsize=None)
def cartan_matrix(n: int) -> np.ndarray:
    """Column j is the dimension vector of the projective P_j = U(n,j)."""
    check_rank(n)
    cols = [dim_vector(IndecType.U(n, j), n) for j in range(1, n + 1)]
    c = np.array(cols, dtype=np.int64).T
    c.setflags(write=False)
    return c


@lru_cache(maxsize=None)
def form_matrix(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """C_A^{-1} + C_A^{-t} with exact rational entries."""
    c = Matrix(cartan_matrix(n).tolist())
    inv = c.inv()
    g = inv + inv.T
    return tuple(tuple(to_fraction(g[a, b]) for b in range(n)) for a in range(n))


def bilinear_form_A(dm: Sequence[int], dn: Sequence[int]) -> Fraction:
    if len(dm) != len(dn):
        raise ValueError(f"dimension vectors of different length: {len(dm)} vs {len(dn)}")
    g = form_matrix(len(dm))
    total = Fraction(0)
    for a, x in enumerate(dm):
        if x == 0:
            continue
        for b, y in enumerate(dn):
            if y:
                total += x * g[a][b] * y
    return total


def form_of(m: IndecType, nt: IndecType, n: int) -> Fraction:
    return bilinear_form_A(dim_vector(m, n), dim_vector(nt, n))


# -- subrepresentations, quotients, morphisms --------------------------


def is_invariant(rep: Rep, bases: Sequence[ImmutableMatrix]) -> bool:
    fld = rep.field
    for a, (s, t) in enumerate(rep.quiver.arrows):
        image = fld.mul(rep.maps[a], bases[s - 1])
        if not fld.contains_columns(bases[t - 1], image):
            return False
    return True


def subrepresentation(rep: Rep, bases: Sequence[ImmutableMatrix]) -> Rep:
    """The subrep spanned by the columns of bases[v-1] at each vertex v."""
    fld = rep.field
    maps = []
    for a, (s, t) in enumerate(rep.quiver.arrows):
        image = fld.mul(rep.maps[a], bases[s - 1])
        maps.append(fld.solve_columns(bases[t - 1], image))
    dims = tuple(b.cols for b in bases)
    return Rep(dims=dims, maps=tuple(maps), field=fld)


def quotient_representation(
    rep: Rep, bases: Sequence[ImmutableMatrix]
) -> Tuple[Rep, Tuple[ImmutableMatrix, ...]]:
    """Quotient rep / sub, in coordinates of a standard-basis complement."""
    fld = rep.field
    comps = tuple(fld.complement(bases[v], rep.dims[v]) for v in range(rep.n))
    maps = []
    for a, (s, t) in enumerate(rep.quiver.arrows):
        full = fld.hstack([bases[t - 1], comps[t - 1]], rep.dims[t - 1])
        image = fld.mul(rep.maps[a], comps[s - 1])
        coords = fld.solve_columns(full, image)
        maps.append(coords[bases[t - 1].cols :, :])
    dims = tuple(c.cols for c in comps)
    return Rep(dims=dims, maps=tuple(maps), field=fld), comps


@dataclass(frozen=True)
class Morphism:
    source: Rep
    target: Rep
    mats: Tuple[ImmutableMatrix, ...]

    def is_morphism(self) -> bool:
        fld = self.source.field
        for a, (s, t) in enumerate(self.source.quiver.arrows):
            left = fld.mul(self.mats[t - 1], self.source.maps[a])
            right = fld.mul(self.target.maps[a], self.mats[s - 1])
            if left != right:
                return False
        return True

    def is_surjective(self) -> bool:
        fld = self.source.field
        return all(
            fld.rank(m) == self.target.dims[v] for v, m in enumerate(self.mats)
        )

    def compose(self, first: "Morphism") -> "Morphism":
        """self o first."""
        fld = self.source.field
        mats = tuple(fld.mul(a, b) for a, b in zip(self.mats, first.mats))
        return Morphism(source=first.source, target=self.target, mats=mats)

    def is_zero(self) -> bool:
        return all(self.source.field.is_zero(m) for m in self.mats)

    def kernel(self) -> Tuple[Rep, "Morphism"]:
        """Kernel rep together with its inclusion into the source."""
        fld = self.source.field
        bases = tuple(fld.kernel(m) if m.cols else fld.zeros(0, 0) for m in self.mats)
        bases = tuple(
            b if b.rows == self.source.dims[v] else fld.zeros(self.source.dims[v], 0)
            for v, b in enumerate(bases)
        )
        sub = subrepresentation(self.source, bases)
        return sub, Morphism(source=sub, target=self.source, mats=bases)
