"""Complexes of free squarefree S-modules in generator form.

A free squarefree module is a sum of copies of S(-H), one per generator with
degree H.  A map between two such modules is recorded by a scalar matrix;
the entry from a generator of degree H to one of degree H' ⊆ H stands for
``c * x^(H \\ H')``.  Both the BGG functor and minimal free resolutions land
here, and duality into the canonical module is a transpose.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exactla import Field, MalformedInputError, Mat
from .complexes import SqComplex
from .modules import SqModule, SqMorphism


@dataclass(frozen=True, eq=False)
class FreeComplex:
    """``gens[k]`` are generator degrees at position ``lo + k``; ``mats[k]`` maps position k to k+1."""

    n: int
    field: Field
    lo: int
    gens: tuple
    mats: tuple

    def __post_init__(self):
        if len(self.mats) != max(len(self.gens) - 1, 0):
            raise MalformedInputError("need one matrix between consecutive positions")
        for k, m in enumerate(self.mats):
            if m.shape != (len(self.gens[k + 1]), len(self.gens[k])):
                raise MalformedInputError(f"matrix {k} has shape {m.shape}")
            src, tgt = self.gens[k], self.gens[k + 1]
            for r, row in enumerate(m.data):
                for c, v in enumerate(row):
                    if v and tgt[r] & ~src[c]:
                        raise MalformedInputError("free map entry between incompatible generator degrees")

    @property
    def hi(self) -> int:
        return self.lo + len(self.gens) - 1

    @property
    def side(self) -> str:
        return "S"

    def ranks(self) -> dict[int, int]:
        return {self.lo + k: len(g) for k, g in enumerate(self.gens)}

    def strand(self, G: int):
        idx = [[j for j, H in enumerate(g) if H & ~G == 0] for g in self.gens]
        mats = [m.submatrix(idx[k + 1], idx[k]) for k, m in enumerate(self.mats)]
        return self.lo, [len(ix) for ix in idx], mats

    def is_complex(self) -> bool:
        return all((self.mats[k + 1] @ self.mats[k]).is_zero() for k in range(len(self.mats) - 1))

    def dual(self) -> "FreeComplex":
        """Hom into the normalized dualizing complex S(-1)[n]: position p goes to -n-p,
        a generator of degree H to degree [n] \\ H, matrices transposed."""
        full = (1 << self.n) - 1
        gens = tuple(tuple(full ^ H for H in g) for g in reversed(self.gens))
        mats = tuple(m.T() for m in reversed(self.mats))
        return FreeComplex(self.n, self.field, -self.n - self.hi, gens, mats)

    def to_sqcomplex(self) -> SqComplex:
        n, field = self.n, self.field
        terms = []
        index = []  # per position: per degree G, list of generator indices
        for g in self.gens:
            per_G = [[j for j, H in enumerate(g) if H & ~G == 0] for G in range(1 << n)]
            index.append(per_G)
            dims = tuple(len(x) for x in per_G)
            maps = {}
            for G in range(1 << n):
                if not dims[G]:
                    continue
                for b in range(n):
                    G2 = G | 1 << b
                    if G2 == G:
                        continue
                    pos = {j: r for r, j in enumerate(per_G[G2])}
                    data = [[0] * dims[G] for _ in range(dims[G2])]
                    for c, j in enumerate(per_G[G]):
                        data[pos[j]][c] = 1
                    maps[(G, b)] = Mat(field, dims[G2], dims[G], data)
            terms.append(SqModule(n, dims, maps, field, "S"))
        diffs = []
        for k, m in enumerate(self.mats):
            comps = tuple(m.submatrix(index[k + 1][G], index[k][G]) for G in range(1 << n))
            diffs.append(SqMorphism(terms[k], terms[k + 1], comps))
        if not terms:
            from .modules import zero_module

            return SqComplex(0, (zero_module(n, field),), ())
        return SqComplex(self.lo, tuple(terms), tuple(diffs))
