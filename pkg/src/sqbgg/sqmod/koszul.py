"""Betti tables and their computation through Koszul homology."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..exactla import Field, Mat
from ..simplicial import format_subset, popcount
from .complexes import as_complex, strand_cohomology_dims
from .modules import alpha, bits, sub_masks


@dataclass(frozen=True)
class BettiTable:
    """Nonzero entries ``(i, F) -> beta_{i,F}``; ``F`` a bitmask."""

    n: int
    entries: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for (i, F), v in self.entries.items():
            if v <= 0:
                raise ValueError(f"Betti entry {(i, F)} must be positive, got {v}")
            if F >> self.n:
                raise ValueError(f"degree {F} outside [n]")

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __iter__(self):
        return iter(sorted(self.entries.items(), key=lambda kv: (kv[0][0], popcount(kv[0][1]), kv[0][1])))

    def coarse(self) -> dict[tuple[int, int], int]:
        """beta_{i,j} = sum over |F| = j of beta_{i,F}."""
        out: dict[tuple[int, int], int] = {}
        for (i, F), v in self.entries.items():
            key = (i, popcount(F))
            out[key] = out.get(key, 0) + v
        return out

    def to_tsv(self) -> str:
        lines = [f"{i}\t{format_subset(F)}\t{v}" for (i, F), v in self]
        return "\n".join(lines) + ("\n" if lines else "")

    def grid(self) -> str:
        """Macaulay-style table: rows j - i, columns i."""
        c = self.coarse()
        if not c:
            return "total:\n"
        cols = sorted({i for i, _ in c})
        cols = list(range(cols[0], cols[-1] + 1))
        rows = sorted({j - i for i, j in c})
        rows = list(range(rows[0], rows[-1] + 1))
        cells = {(j - i, i): v for (i, j), v in c.items()}
        totals = {i: sum(v for (r, ii), v in cells.items() if ii == i) for i in cols}
        label_w = max(len("total:"), max(len(f"{r}:") for r in rows))
        col_w = [max(len(str(i)), len(str(totals[i])), max(len(str(cells.get((r, i), "."))) for r in rows)) for i in cols]
        out = [" " * label_w + " " + " ".join(str(i).rjust(w) for i, w in zip(cols, col_w))]
        out.append("total:".rjust(label_w) + " " + " ".join(str(totals[i]).rjust(w) for i, w in zip(cols, col_w)))
        for r in rows:
            out.append(f"{r}:".rjust(label_w) + " " + " ".join(str(cells.get((r, i), ".")).rjust(w) for i, w in zip(cols, col_w)))
        return "\n".join(out) + "\n"

    def to_dict(self) -> dict:
        return {"n": self.n, "entries": [[i, F, v] for (i, F), v in self]}


def koszul_strand(C, F: int, field: Field):
    """Degree-F strand of Tot(Koszul(x) ⊗ C); returns (lo, dims, mats) at total positions."""
    blocks: dict[int, list[tuple[int, int, int]]] = {}  # t -> [(p, G, dim)]
    for p in range(C.lo, C.hi + 1):
        T = C.term(p)
        for G in sub_masks(F):
            d = T.dims[F & ~G]
            if d:
                blocks.setdefault(p - popcount(G), []).append((p, G, d))
    if not blocks:
        return 0, [], []
    t_lo, t_hi = min(blocks), max(blocks)
    offsets: dict[tuple[int, int], int] = {}
    dims = []
    for t in range(t_lo, t_hi + 1):
        off = 0
        for p, G, d in sorted(blocks.get(t, []), key=lambda x: (x[0], x[1])):
            offsets[(p, G)] = off
            off += d
        dims.append(off)
    mats = []
    for k, t in enumerate(range(t_lo, t_hi)):
        data = [[0] * dims[k] for _ in range(dims[k + 1])]
        for p, G, d in blocks.get(t, []):
            c0 = offsets[(p, G)]
            T = C.term(p)
            base = F & ~G
            for g in bits(G):
                tgt = offsets.get((p, G & ~(1 << g)))
                if tgt is None:
                    continue
                m = T.map(base, g)
                neg = alpha(g, G) & 1
                for r, row in enumerate(m.data):
                    for c, v in enumerate(row):
                        if v:
                            data[tgt + r][c0 + c] = field(-v) if neg else v
            tgt = offsets.get((p + 1, G))
            if tgt is not None:
                m = C.diff(p).comps[base]
                neg = popcount(G) & 1
                for r, row in enumerate(m.data):
                    for c, v in enumerate(row):
                        if v:
                            data[tgt + r][c0 + c] = field(-v) if neg else v
        mats.append(Mat(field, dims[k + 1], dims[k], data))
    return t_lo, dims, mats


def betti_koszul(M) -> BettiTable:
    """beta_{i,F} = dim H^{-i} of the degree-F strand of Koszul(x) ⊗ M."""
    C = as_complex(M)
    entries = {}
    for F in range(1 << C.n):
        _, h = strand_cohomology_dims(koszul_strand(C, F, C.field), C.field)
        for t, v in h.items():
            entries[(-t, F)] = v
    return BettiTable(C.n, entries)
