"""The BGG functor on squarefree E-complexes, the duality D_S, and distinguished pairs."""

from __future__ import annotations

from dataclasses import dataclass

from .exactla import Mat
from .simplicial import popcount
from .sqmod import (
    NEG_INF,
    FreeComplex,
    SqComplex,
    SqModule,
    alexander,
    as_complex,
    cohomology,
    cohomology_dims,
    complex_functor_E,
    hilbert_data_of_dims,
    maximal_support,
)


def bgg_L_free(N) -> FreeComplex:
    """ℒ(N•) = 𝐋(N•)(-1) as a complex of free squarefree S-modules.

    A basis vector z of N^i_{-F} becomes a generator of degree [n] \\ F at
    position i + |F|, with d(1 ⊗ z) = Σ_l x_l ⊗ y_l z + (-1)^m (1 ⊗ δ(z)).
    """
    N = as_complex(N)
    if N.side != "E":
        raise ValueError("bgg_L expects a complex of E-modules")
    n, field = N.n, N.field
    full = (1 << n) - 1
    by_pos: dict[int, list[tuple[int, int, int]]] = {}
    for i in range(N.lo, N.hi + 1):
        T = N.term(i)
        for F in sorted(range(1 << n), key=lambda m: (popcount(m), m)):
            for b in range(T.dims[F]):
                by_pos.setdefault(i + popcount(F), []).append((i, F, b))
    if not by_pos:
        return FreeComplex(n, field, 0, (), ())
    lo, hi = min(by_pos), max(by_pos)
    positions = [by_pos.get(m, []) for m in range(lo, hi + 1)]
    index = [{g: k for k, g in enumerate(p)} for p in positions]
    gens = tuple(tuple(full ^ F for (_, F, _) in p) for p in positions)
    mats = []
    minus = field(-1)
    for k in range(len(positions) - 1):
        m = lo + k
        src, tgt = positions[k], index[k + 1]
        data = [[0] * len(src) for _ in range(len(positions[k + 1]))]
        for c, (i, F, b) in enumerate(src):
            T = N.term(i)
            for l in range(n):
                if F >> l & 1:
                    continue
                F2 = F | 1 << l
                if not T.dims[F2]:
                    continue
                act = T.map(F, l)
                for b2 in range(T.dims[F2]):
                    v = act.data[b2][b]
                    if v:
                        data[tgt[(i, F2, b2)]][c] = v
            if i + 1 <= N.hi:
                T2 = N.term(i + 1)
                delta = N.diff(i).comps[F]
                for b2 in range(T2.dims[F]):
                    v = delta.data[b2][b]
                    if v:
                        data[tgt[(i + 1, F, b2)]][c] = field(v * minus) if m & 1 else v
        mats.append(Mat(field, len(positions[k + 1]), len(src), data))
    return FreeComplex(n, field, lo, gens, tuple(mats))


def bgg_L(N) -> SqComplex:
    """ℒ(N•) as a complex of squarefree S-modules."""
    return bgg_L_free(N).to_sqcomplex()


def dual_S(M) -> SqComplex:
    """D_S(M•) realized as 𝐀 ∘ ℒ ∘ ℰ (M•)."""
    return alexander(bgg_L(complex_functor_E(as_complex(M))))


def _cohom(x) -> dict[int, tuple[int, ...]]:
    if isinstance(x, dict):
        return x
    if isinstance(x, (SqModule, SqComplex)) and x.side == "E":
        return cohomology_dims(bgg_L_free(x))
    return cohomology_dims(x)


@dataclass(frozen=True, order=True)
class DistinguishedPairSq:
    F: int
    i: int


@dataclass(frozen=True, order=True)
class DistinguishedPairZ:
    d: int
    i: int


def distinguished_pairs_sq(x, variant: str = "dimension") -> frozenset[DistinguishedPairSq]:
    """Squarefree distinguished pairs (F, i): P_F is a minimal prime of H^i, and lower
    cohomology is small near F.

    With ``variant="dimension"`` the smallness condition is dim_F H^j < |F| + i - j for
    j < i, i.e. H^j_G = 0 for every G ⊇ F with |G| >= |F| + i - j.  This is the form the
    duality theorems need.  ``variant="as-printed"`` instead demands H^j_G = 0 for
    G ⊇ F with |G| < |F| + i - j; it is kept for comparison only.

    ``x`` is an S-complex, an E-complex (taken through ℒ), or precomputed cohomology dims.
    """
    if variant not in ("dimension", "as-printed"):
        raise ValueError(f"unknown variant {variant!r}")
    small_must_vanish = variant == "as-printed"
    H = _cohom(x)
    out = []
    for i, dims in H.items():
        for F in maximal_support(dims):
            ok = True
            for j, dj in H.items():
                if j >= i:
                    continue
                bound = popcount(F) + i - j
                for G, v in enumerate(dj):
                    if v and G & F == F and (popcount(G) < bound) == small_must_vanish:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(DistinguishedPairSq(F, i))
    return frozenset(out)


def krull_dims(H: dict[int, tuple[int, ...]]) -> dict[int, int]:
    return {i: hilbert_data_of_dims(d).dim for i, d in H.items()}


def distinguished_pairs_z(x) -> frozenset[DistinguishedPairZ]:
    """(d, i) with d = dim H^i >= 0 and d_j < d + i - j for every j < i."""
    H = _cohom(x)
    dims = krull_dims(H)
    out = []
    for i, d in dims.items():
        if d == NEG_INF:
            continue
        if all(dj < d + i - j for j, dj in dims.items() if j < i):
            out.append(DistinguishedPairZ(d, i))
    return frozenset(out)


@dataclass(frozen=True)
class GrowthProfile:
    """Per cohomological index: Krull dimension and multiplicity of H^i(ℒ(N•))."""

    d: dict
    e: dict

    def d_at(self, i: int):
        return self.d.get(i, NEG_INF)

    def e_at(self, i: int):
        return self.e.get(i)


def growth_profile(N) -> GrowthProfile:
    if as_complex(N).side != "E":
        raise ValueError("growth_profile expects an E-module or E-complex")
    H = cohomology_dims(bgg_L_free(N))
    d, e = {}, {}
    for i, dims in H.items():
        hd = hilbert_data_of_dims(dims)
        d[i] = hd.dim
        e[i] = hd.deg
    return GrowthProfile(d, e)


def cohomology_modules(C) -> dict[int, SqModule]:
    """Nonzero cohomology modules with induced structure maps."""
    return {i: M for i, M in cohomology(C).items() if not M.is_zero()}
