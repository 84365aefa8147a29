"""Minimal free resolutions computed inside the squarefree category, and Ext into ω."""

from __future__ import annotations

from dataclasses import dataclass

from ..exactla import Field, Mat, complement_indices, from_columns, hstack, kernel, rank, solve
from ..simplicial import popcount
from .complexes import cohomology_dims
from .free import FreeComplex
from .koszul import BettiTable
from .modules import SqModule, bits, masks_by_size


@dataclass(frozen=True)
class CoverStep:
    """One minimal cover: generator degrees, generator vectors in the covered module,
    and the kernel of the cover as a new squarefree module."""

    gens: tuple            # generator degrees in cover order
    gen_vectors: tuple     # per generator, a coordinate vector in M_{degree}
    kernel_module: SqModule
    kernel_bases: tuple    # per degree H, the kernel basis (columns) in cover coordinates
    cover_index: tuple     # per degree H, generator indices spanning the cover in degree H


@dataclass(frozen=True)
class Resolution:
    """F_0 <- F_1 <- ...; ``diffs[k]`` is the scalar matrix of F_{k+1} -> F_k."""

    n: int
    field: Field
    gens: tuple
    diffs: tuple

    @property
    def length(self) -> int:
        return max(len(self.gens) - 1, 0)

    def ranks(self) -> list[int]:
        return [len(g) for g in self.gens]

    def betti(self) -> BettiTable:
        entries: dict = {}
        for k, g in enumerate(self.gens):
            for H in g:
                entries[(k, H)] = entries.get((k, H), 0) + 1
        return BettiTable(self.n, entries)

    def free_complex(self) -> FreeComplex:
        """F_k placed at cohomological position -k."""
        k = len(self.gens)
        gens = tuple(reversed(self.gens))
        mats = tuple(reversed(self.diffs))
        return FreeComplex(self.n, self.field, -(k - 1) if k else 0, gens, mats)


def _minimal_generators(M: SqModule, F: int) -> list[list]:
    field = M.field
    d = M.dims[F]
    if not d:
        return []
    imgs = [M.map(F & ~(1 << i), i) for i in bits(F) if M.dims[F & ~(1 << i)]]
    I = hstack(imgs, field, d) if imgs else Mat(field, d, 0)
    out = []
    for k in complement_indices(I, d):
        v = [0] * d
        v[k] = 1
        out.append(v)
    return out


def minimal_cover(M: SqModule) -> CoverStep:
    n, field = M.n, M.field
    order = masks_by_size(n)
    gens: list[int] = []
    vecs: list[list] = []
    for F in order:
        for v in _minimal_generators(M, F):
            gens.append(F)
            vecs.append(v)
    # cover_index[H]: generators with degree ⊆ H, in cover order
    cover_index = [[j for j, G in enumerate(gens) if G & ~H == 0] for H in range(1 << n)]
    # images of generators in M_H, built up along the lowest missing bit
    images: dict[tuple[int, int], list] = {}
    for H in order:
        for j in cover_index[H]:
            G = gens[j]
            if G == H:
                images[(j, H)] = vecs[j]
            else:
                b = bits(H & ~G)[-1]
                images[(j, H)] = M.map(H & ~(1 << b), b).apply(images[(j, H & ~(1 << b))])
    bases = []
    dims = []
    for H in range(1 << n):
        cols = [images[(j, H)] for j in cover_index[H]]
        pi = from_columns(field, M.dims[H], cols)
        Kb = kernel(pi)
        bases.append(Kb)
        dims.append(Kb.cols)
    maps = {}
    for H in range(1 << n):
        if not dims[H]:
            continue
        for b in range(n):
            H2 = H | 1 << b
            if H2 == H or not dims[H2]:
                continue
            pos = {j: r for r, j in enumerate(cover_index[H2])}
            inc = [[0] * len(cover_index[H]) for _ in cover_index[H2]]
            for c, j in enumerate(cover_index[H]):
                inc[pos[j]][c] = 1
            moved = Mat(field, len(cover_index[H2]), len(cover_index[H]), inc) @ bases[H]
            coords = solve(bases[H2], moved)
            assert coords is not None, "kernel not closed under multiplication"
            if not coords.is_zero():
                maps[(H, b)] = coords
    K = SqModule(n, tuple(dims), maps, field, "S")
    return CoverStep(tuple(gens), tuple(tuple(v) for v in vecs), K, tuple(bases), tuple(tuple(x) for x in cover_index))


def is_minimal_cover(M: SqModule, step: CoverStep) -> bool:
    """K ⊗ cover -> K ⊗ M is an isomorphism in every degree."""
    field = M.field
    for F in range(1 << M.n):
        d = M.dims[F]
        imgs = [M.map(F & ~(1 << i), i) for i in bits(F) if M.dims[F & ~(1 << i)]]
        I = hstack(imgs, field, d) if imgs else Mat(field, d, 0)
        new = [list(v) for G, v in zip(step.gens, step.gen_vectors) if G == F]
        r_i = rank(I)
        if r_i + len(new) != d:
            return False
        if new and rank(hstack([I, from_columns(field, d, new)], field, d)) != d:
            return False
    return True


def min_free_resolution(M: SqModule) -> Resolution:
    """Iterated minimal covers; terminates after at most n + 1 steps."""
    n, field = M.n, M.field
    gens_all = []
    diffs = []
    cur = M
    prev: CoverStep | None = None
    for _ in range(n + 2):
        if cur.is_zero():
            break
        step = minimal_cover(cur)
        gens_all.append(step.gens)
        if prev is not None:
            # generators of the kernel are vectors in prev's cover coordinates
            data = [[0] * len(step.gens) for _ in prev.gens]
            for c, (G, v) in enumerate(zip(step.gens, step.gen_vectors)):
                w = prev.kernel_bases[G].apply(v)
                for r_local, j in enumerate(prev.cover_index[G]):
                    if w[r_local]:
                        data[j][c] = w[r_local]
            diffs.append(Mat(field, len(prev.gens), len(step.gens), data))
        prev = step
        cur = step.kernel_module
    else:
        raise AssertionError("resolution did not terminate within n + 1 steps")
    return Resolution(n, field, tuple(gens_all), tuple(diffs))


def ext_dims(M: SqModule) -> dict[int, tuple[int, ...]]:
    """p -> squarefree dims of Ext^p_S(M, ω•) = Ext^{n+p}_S(M, S(-1)), nonzero p only."""
    res = min_free_resolution(M)
    return cohomology_dims(res.free_complex().dual(), M.n, M.field)


def ext_modules(M: SqModule, p: int) -> tuple[int, ...]:
    """dim Ext^p_S(M, ω•)_F for every F (zeros outside -n <= p <= 0)."""
    return ext_dims(M).get(p, (0,) * (1 << M.n))
