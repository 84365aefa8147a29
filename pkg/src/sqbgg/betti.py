"""Betti tables by several routes, extremal Betti numbers, projective dimension and regularity."""

from __future__ import annotations

from dataclasses import dataclass

from .bgg import bgg_L_free
from .exactla import Field, QQ
from .simplicial import SimplicialComplex, induced_subcomplex, popcount, reduced_homology
from .sqmod import (
    BettiTable,
    as_complex,
    betti_koszul,
    cohomology_dims,
    complex_dual_E,
    complex_functor_E,
    min_free_resolution,
)

__all__ = [
    "BettiTable", "ExtremalSet", "betti_koszul", "betti_hochster", "betti_resolution", "betti_bgg",
    "extremal", "projdim_reg",
]


def betti_hochster(delta: SimplicialComplex, which: str = "face-ring", field: Field = QQ) -> BettiTable:
    """beta_{i,F}(K[Δ]) = h̃_{|F|-i-1}(Δ|_F); for I_Δ shift i by one away from F = ∅."""
    n = delta.n
    ring: dict = {}
    for F in range(1 << n):
        h = reduced_homology(induced_subcomplex(delta, F), field)   # h[k] = h~_{k-1}
        k = popcount(F)
        for i in range(0, n + 1):
            deg = k - i - 1
            v = h[deg + 1] if 0 <= deg + 1 < len(h) else 0
            if v:
                ring[(i, F)] = v
    if which in ("face-ring", "ring", "quotient"):
        return BettiTable(n, ring)
    if which != "ideal":
        raise ValueError(f"unknown Stanley-Reisner object {which!r}")
    ideal = {(i - 1, F): v for (i, F), v in ring.items() if F and i >= 1}
    if delta.is_void:
        ideal[(0, 0)] = 1
    return BettiTable(n, ideal)


def betti_resolution(M) -> BettiTable:
    """Betti numbers read off a minimal free resolution (modules only)."""
    C = as_complex(M)
    if not C.is_module():
        raise ValueError("the resolution route handles single modules only")
    table = min_free_resolution(C.terms[0]).betti()
    if C.lo:
        # M placed at position p has Tor_i(K, M[-p]) = Tor_{i+p}(K, M)
        table = BettiTable(table.n, {(i - C.lo, F): v for (i, F), v in table.entries.items()})
    return table


def betti_bgg(M) -> BettiTable:
    """beta_{j,G}(M•) = dim H^{n+j-|G|}(ℒ(D_E(ℰ(M•))))_G."""
    C = as_complex(M)
    n = C.n
    H = cohomology_dims(bgg_L_free(complex_dual_E(complex_functor_E(C))), n, C.field)
    entries = {}
    for pos, dims in H.items():
        for G, v in enumerate(dims):
            if v:
                entries[(pos - n + popcount(G), G)] = v
    return BettiTable(n, entries)


@dataclass(frozen=True)
class ExtremalSet:
    """Extremal positions with their values; ``grading`` is 'fine' (i, F) or 'coarse' (i, j)."""

    grading: str
    entries: dict

    def positions(self) -> frozenset:
        return frozenset(self.entries)


def extremal(table: BettiTable, grading: str = "fine", variant: str = "weak") -> ExtremalSet:
    """Extremal Betti numbers by a literal scan.

    fine: beta_{i,F} != 0 and beta_{j,G} = 0 for every (j, G) != (i, F) with j >= i,
    G ⊇ F and |G| - j >= |F| - i (``variant="strict"`` uses > in the last inequality).
    coarse: beta_{k,m} != 0 and beta_{i,j} = 0 for every (i, j) != (k, m) with i >= k and
    j - i >= m - k, on the table coarsened by |F|.
    """
    if grading == "fine":
        if variant not in ("weak", "strict"):
            raise ValueError(f"unknown variant {variant!r}")
        strict = variant == "strict"
        items = table.entries
        out = {}
        for (i, F), v in items.items():
            threshold = popcount(F) - i
            killed = False
            for (j, G) in items:
                if (j, G) == (i, F) or j < i or G & F != F:
                    continue
                excess = popcount(G) - j - threshold
                if excess > 0 or (excess == 0 and not strict):
                    killed = True
                    break
            if not killed:
                out[(i, F)] = v
        return ExtremalSet("fine", out)
    if grading == "coarse":
        items = table.coarse()
        out = {}
        for (k, m), v in items.items():
            killed = any(
                (i, j) != (k, m) and i >= k and j - i >= m - k
                for (i, j) in items
            )
            if not killed:
                out[(k, m)] = v
        return ExtremalSet("coarse", out)
    raise ValueError(f"unknown grading {grading!r}")


def projdim_reg(table: BettiTable) -> tuple[int | None, int | None]:
    """(max i, max |F| - i) over nonzero entries; (None, None) for an empty table."""
    if not table.entries:
        return None, None
    return (max(i for i, _ in table.entries), max(popcount(F) - i for i, F in table.entries))
