# src/homology/resolution.py
"""
Projective covers and minimal projective resolutions over Λ(n-1,1,1).

The indecomposable projectives are P_v = U(n,v). A basis of P_v is the path
basis of its generator: one vector at each vertex v..n-1, and at vertex n
the pair (path to n, alpha * path to n). For v = n the pair is
(generator, alpha * generator).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix

from src.quiver.quiverrep import (
    IndecType,
    Morphism,
    Multiset,
    Rep,
    build_indec,
    build_module,
    check_rank,
    direct_sum,
    iso_type,
    multiset_label,
    normalize_multiset,
    zero_rep,
)
from src.utils.field import ExactField, get_field

logger = logging.getLogger(__name__)

FINITE = "finite"
PERIODIC = "periodic"
UNDETERMINED = "undetermined"


class ResolutionUndeterminedError(RuntimeError):
    pass


def projective(i: int, n: int) -> IndecType:
    check_rank(n)
    if not 1 <= i <= n:
        raise ValueError(f"vertex {i} out of range 1..{n}")
    return IndecType.U(n, i)


def default_depth(n: int) -> int:
    return 2 * n + 4


def _generator_images(v: int, target: Rep, x: ImmutableMatrix) -> List[ImmutableMatrix]:
    """
    Per-vertex columns of the unique map P_v -> target sending the generator
    to x (a column in target_v).
    """
    fld = target.field
    n = target.n
    loop = target.maps[-1]
    cols = []
    for w in range(1, n + 1):
        if w < v:
            cols.append(fld.zeros(target.dims[w - 1], 0))
        elif w < n:
            cols.append(fld.mul(target.path_map(v, w), x))
        else:
            first = fld.mul(target.path_map(v, n), x)
            cols.append(fld.hstack([first, fld.mul(loop, first)], target.dims[n - 1]))
    return cols


def morphism_from_generators(
    vertices: Sequence[int], target: Rep, images: Sequence[ImmutableMatrix]
) -> Morphism:
    """The map from the direct sum of P_v (v in vertices) sending generators to images."""
    fld = target.field
    n = target.n
    if vertices:
        source = direct_sum([build_indec(IndecType.U(n, v), n, fld) for v in vertices])
    else:
        source = zero_rep(n, fld)
    per_summand = [_generator_images(v, target, x) for v, x in zip(vertices, images)]
    mats = tuple(
        fld.hstack([cols[w] for cols in per_summand], target.dims[w])
        for w in range(n)
    )
    return Morphism(source=source, target=target, mats=mats)


def top_basis(rep: Rep) -> Tuple[ImmutableMatrix, ...]:
    """
    Per vertex, standard basis columns spanning a complement of the radical
    (the images of all arrows ending there).
    """
    fld = rep.field
    out = []
    for v in range(1, rep.n + 1):
        images = [rep.maps[a] for a in rep.quiver.incoming(v)]
        rad = fld.hstack(images, rep.dims[v - 1])
        out.append(fld.complement(rad, rep.dims[v - 1]))
    return tuple(out)


def top_multiplicities(rep: Rep) -> Tuple[int, ...]:
    return tuple(b.cols for b in top_basis(rep))


def cover_vertices(multiplicities: Sequence[int]) -> Tuple[int, ...]:
    return tuple(v for v, m in enumerate(multiplicities, start=1) for _ in range(m))


def projective_cover(rep: Rep) -> Tuple[Rep, Morphism]:
    """P = sum of P_v over a basis of the top, and the surjection P -> rep."""
    tops = top_basis(rep)
    vertices, images = [], []
    for v, basis in enumerate(tops, start=1):
        for c in range(basis.cols):
            vertices.append(v)
            images.append(basis[:, c])
    epi = morphism_from_generators(vertices, rep, images)
    return epi.source, epi


def generator_rows(vertices: Sequence[int], n: int) -> Tuple[Tuple[int, int], ...]:
    """(vertex, row) of each summand's generator inside the direct sum of P_v."""
    offsets = [0] * n
    out = []
    for v in vertices:
        out.append((v, offsets[v - 1]))
        for w in range(v, n + 1):
            offsets[w - 1] += 2 if w == n else 1
    return tuple(out)


@dataclass(frozen=True)
class ProjResolution:
    source: Multiset
    n: int
    order: int
    terms: Tuple[Tuple[int, ...], ...]
    differentials: Tuple[Morphism, ...]
    augmentation: Morphism
    syzygy_types: Tuple[Multiset, ...]
    period: Optional[Tuple[int, int]]
    status: str
    max_depth: int

    @property
    def length(self) -> Optional[int]:
        """Projective dimension for finite resolutions."""
        if self.status != FINITE:
            return None
        return len(self.terms) - 1

    def term(self, p: int) -> Tuple[int, ...]:
        """Multiplicities of P_1..P_n in degree p, extended by periodicity."""
        if p < len(self.terms):
            return self.terms[p]
        if self.status == FINITE:
            return (0,) * self.n
        if self.status == PERIODIC:
            p0, ell = self.period
            return self.terms[p0 + (p - p0) % ell]
        raise ResolutionUndeterminedError(
            f"degree {p} of the resolution of {multiset_label(self.source)} "
            f"is past the computed depth {self.max_depth}"
        )

    def syzygy(self, p: int) -> Multiset:
        """Iso type of Omega^p (Omega^0 is the source)."""
        if p < len(self.syzygy_types):
            return self.syzygy_types[p]
        if self.status == FINITE:
            return ()
        if self.status == PERIODIC:
            p0, ell = self.period
            return self.syzygy_types[p0 + (p - p0) % ell]
        raise ResolutionUndeterminedError(
            f"syzygy {p} of {multiset_label(self.source)} is past the computed depth "
            f"{self.max_depth}"
        )

    def to_dict(self) -> dict:
        return {
            "source": multiset_label(self.source),
            "n": self.n,
            "terms": [list(t) for t in self.terms],
            "syzygy_types": [multiset_label(s) for s in self.syzygy_types],
            "period": list(self.period) if self.period else None,
            "status": self.status,
        }


def find_period(syzygies: Sequence[Multiset]) -> Optional[Tuple[int, int]]:
    """
    Smallest (p0, l) with syz[p0+l] = syz[p0] and syz[p0+l+1] = syz[p0+1].
    """
    last = len(syzygies) - 1
    for p0 in range(last):
        for ell in range(1, last - p0):
            if (
                syzygies[p0 + ell] == syzygies[p0]
                and syzygies[p0 + ell + 1] == syzygies[p0 + 1]
            ):
                return p0, ell
    return None


@lru_cache(maxsize=None)
def _resolve(source: Multiset, n: int, max_depth: int, order: int) -> ProjResolution:
    fld = get_field(order)
    current = build_module(source, n, fld)
    terms: List[Tuple[int, ...]] = []
    diffs: List[Morphism] = []
    syz: List[Multiset] = [source]
    augmentation = None
    previous_inclusion: Optional[Morphism] = None
    period = None
    status = UNDETERMINED

    for p in range(max_depth + 1):
        if current.is_zero():
            status = FINITE
            break
        _, epi = projective_cover(current)
        if augmentation is None:
            augmentation = epi
        else:
            diffs.append(previous_inclusion.compose(epi))
        terms.append(top_multiplicities(current))
        kernel, inclusion = epi.kernel()
        syz.append(iso_type(kernel))
        logger.debug(
            "resolution of %s: P_%d = %s, syzygy %s",
            multiset_label(source),
            p,
            terms[-1],
            multiset_label(syz[-1]) or "0",
        )
        previous_inclusion = inclusion
        current = kernel
        if current.is_zero():
            status = FINITE
            break
        period = find_period(syz)
        if period is not None:
            status = PERIODIC
            break

    if augmentation is None:
        augmentation = Morphism(
            source=zero_rep(n, fld), target=current, mats=tuple(fld.zeros(0, 0) for _ in range(n))
        )
    if status == UNDETERMINED:
        logger.warning(
            "resolution of %s undetermined after depth %d", multiset_label(source), max_depth
        )
    return ProjResolution(
        source=source,
        n=n,
        order=order,
        terms=tuple(terms),
        differentials=tuple(diffs),
        augmentation=augmentation,
        syzygy_types=tuple(syz),
        period=period,
        status=status,
        max_depth=max_depth,
    )


def min_proj_resolution(
    m, n: int, max_depth: Optional[int] = None, field=0
) -> ProjResolution:
    check_rank(n)
    source = normalize_multiset(m)
    for t in source:
        t.validate(n)
    depth = default_depth(n) if max_depth is None else int(max_depth)
    if depth < 1:
        raise ValueError(f"max_depth must be >= 1, got {depth}")
    order = field.order if isinstance(field, ExactField) else int(field)
    return _resolve(source, n, depth, order)


def check_d_squared(res: ProjResolution) -> bool:
    """epsilon o d_1 = 0 and d_p o d_{p+1} = 0 along the computed part."""
    maps = [res.augmentation] + list(res.differentials)
    return all(maps[k].compose(maps[k + 1]).is_zero() for k in range(len(maps) - 1))


def check_minimal(res: ProjResolution) -> bool:
    """Every differential lands in the radical: generator rows of P_{p-1} vanish."""
    fld = get_field(res.order)
    for p, d in enumerate(res.differentials, start=1):
        gens = generator_rows(cover_vertices(res.terms[p - 1]), res.n)
        for v, row in gens:
            mat = d.mats[v - 1]
            if mat.cols and not fld.is_zero(mat[row, :]):
                return False
    return True


# -- Ext through the Hom complex --------------------------------------


def _cochain_map(d: Morphism, vertices_prev: Sequence[int], vertices_next: Sequence[int], target: Rep) -> ImmutableMatrix:
    """
    Matrix of f -> f o d from Hom(P_{p-1}, N) to Hom(P_p, N), both coordinatized
    by generator images.
    """
    fld = target.field
    n = target.n
    src_coords = [(k, r) for k, v in enumerate(vertices_prev) for r in range(target.dims[v - 1])]
    gens_next = generator_rows(vertices_next, n)
    rows = sum(target.dims[v - 1] for v in vertices_next)
    columns = []
    for k, r in src_coords:
        images = []
        for idx, v in enumerate(vertices_prev):
            x = fld.zeros(target.dims[v - 1], 1)
            if idx == k:
                x = fld.matrix(target.dims[v - 1], 1, [1 if i == r else 0 for i in range(target.dims[v - 1])])
            images.append(x)
        f = morphism_from_generators(vertices_prev, target, images)
        out = []
        for w, row in gens_next:
            out.append(fld.mul(f.mats[w - 1], d.mats[w - 1][:, row]))
        columns.append(fld.vstack(out, 1))
    return fld.hstack(columns, rows)


def ext_dim_via_complex(res: ProjResolution, target: IndecType, p: int) -> int:
    """
    dim Ext^p(M, N) as the cohomology of Hom(P_., N). Needs d_p and d_{p+1}
    inside the computed part of the resolution.
    """
    fld = get_field(res.order)
    nrep = build_indec(target, res.n, fld)
    computed = len(res.terms)
    if p >= computed:
        if res.status == FINITE:
            return 0
        raise ResolutionUndeterminedError(f"degree {p} is outside the computed complex")
    hom_p = sum(m * nrep.dims[v] for v, m in enumerate(res.terms[p]))
    rank_in = 0
    if p >= 1:
        rank_in = fld.rank(
            _cochain_map(
                res.differentials[p - 1],
                cover_vertices(res.terms[p - 1]),
                cover_vertices(res.terms[p]),
                nrep,
            )
        )
    rank_out = 0
    if p + 1 < computed:
        rank_out = fld.rank(
            _cochain_map(
                res.differentials[p],
                cover_vertices(res.terms[p]),
                cover_vertices(res.terms[p + 1]),
                nrep,
            )
        )
    elif res.status != FINITE:
        raise ResolutionUndeterminedError(f"d_{p + 1} is outside the computed complex")
    return hom_p - rank_out - rank_in
