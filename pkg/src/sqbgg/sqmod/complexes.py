"""Bounded cochain complexes of squarefree modules, cones, shifts and cohomology."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..exactla import (
    Field,
    MalformedInputError,
    Mat,
    NotAComplexError,
    block,
    complement_indices,
    from_columns,
    kernel,
    rank,
    solve,
)
from .modules import (
    SqModule,
    SqMorphism,
    direct_sum,
    dual_E,
    dual_morphism,
    functor_E,
    functor_S,
    resign_morphism,
    zero_module,
)


class NotAChainMapError(ValueError):
    """A family of morphisms that does not commute with the differentials."""


@dataclass(frozen=True, eq=False)
class SqComplex:
    """Terms at cohomological positions ``lo .. lo + len(terms) - 1``.

    ``diffs[k]`` is the differential from ``terms[k]`` to ``terms[k + 1]``.
    """

    lo: int
    terms: tuple
    diffs: tuple

    def __post_init__(self):
        if not self.terms:
            raise MalformedInputError("a complex needs at least one term")
        if len(self.diffs) != len(self.terms) - 1:
            raise MalformedInputError("need exactly one differential between consecutive terms")
        t0 = self.terms[0]
        for t in self.terms:
            if (t.n, t.side, t.field) != (t0.n, t0.side, t0.field):
                raise MalformedInputError("complex terms live in different categories")
        for k, d in enumerate(self.diffs):
            if d.source is not self.terms[k] and d.source.dims != self.terms[k].dims:
                raise MalformedInputError(f"differential {k} has wrong source")
            if d.target is not self.terms[k + 1] and d.target.dims != self.terms[k + 1].dims:
                raise MalformedInputError(f"differential {k} has wrong target")

    @classmethod
    def from_module(cls, M: SqModule, position: int = 0) -> "SqComplex":
        return cls(position, (M,), ())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SqComplex):
            return NotImplemented
        return self.lo == other.lo and self.terms == other.terms and self.diffs == other.diffs

    __hash__ = None  # type: ignore[assignment]

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def n(self) -> int:
        return self.terms[0].n

    @property
    def side(self) -> str:
        return self.terms[0].side

    @property
    def field(self) -> Field:
        return self.terms[0].field

    def term(self, i: int) -> SqModule:
        if self.lo <= i <= self.hi:
            return self.terms[i - self.lo]
        return zero_module(self.n, self.field, self.side)

    def diff(self, i: int) -> SqMorphism:
        """d^i : term^i -> term^(i+1)."""
        if self.lo <= i < self.hi:
            return self.diffs[i - self.lo]
        return SqMorphism.zero(self.term(i), self.term(i + 1))

    def is_module(self) -> bool:
        return len(self.terms) == 1

    def strand(self, F: int):
        """(lo, term dims at F, differential matrices at F)."""
        return self.lo, [t.dims[F] for t in self.terms], [d.comps[F] for d in self.diffs]

    def check(self) -> None:
        """Raise NotAComplexError unless d∘d = 0, ValueError on bad modules/maps."""
        for t in self.terms:
            t.check()
        for d in self.diffs:
            d.check()
        for k in range(len(self.diffs) - 1):
            comp = self.diffs[k + 1] @ self.diffs[k]
            if not comp.is_zero():
                raise NotAComplexError(f"d^{self.lo + k + 1} ∘ d^{self.lo + k} != 0")

    def is_complex(self) -> bool:
        try:
            for k in range(len(self.diffs) - 1):
                if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                    return False
        except ValueError:
            return False
        return True

    def __repr__(self) -> str:
        return f"SqComplex(side={self.side}, n={self.n}, range=[{self.lo}, {self.hi}])"

    def trimmed(self) -> "SqComplex":
        """Drop zero terms at both ends."""
        nz = [k for k, t in enumerate(self.terms) if not t.is_zero()]
        if not nz:
            return SqComplex(0, (zero_module(self.n, self.field, self.side),), ())
        a, b = nz[0], nz[-1]
        return SqComplex(self.lo + a, self.terms[a:b + 1], self.diffs[a:b])

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "n": self.n,
            "field": self.field.name,
            "lo": self.lo,
            "terms": [t.to_dict() for t in self.terms],
            "diffs": [d.to_dict() for d in self.diffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "SqComplex":
        try:
            terms = tuple(SqModule.from_dict(t) for t in d["terms"])
            diffs = []
            for k, dd in enumerate(d.get("diffs", [])):
                s, t = terms[k], terms[k + 1]
                field = s.field
                comps = []
                for F in range(1 << s.n):
                    rows = dd.get(str(F))
                    if rows is None:
                        comps.append(Mat(field, t.dims[F], s.dims[F]))
                    else:
                        comps.append(Mat(field, t.dims[F], s.dims[F], [[field.parse_element(x) for x in r] for r in rows]))
                diffs.append(SqMorphism(s, t, tuple(comps)))
            return cls(int(d.get("lo", 0)), terms, tuple(diffs))
        except (KeyError, TypeError, IndexError, AttributeError, ValueError) as e:
            raise MalformedInputError(f"malformed complex JSON: {e}") from None


def as_complex(x) -> SqComplex:
    if isinstance(x, SqComplex):
        return x
    if isinstance(x, SqModule):
        return SqComplex.from_module(x)
    raise TypeError(f"expected SqModule or SqComplex, got {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degreewise morphisms ``comps[i]: source^i -> target^i`` (missing = zero)."""

    source: SqComplex
    target: SqComplex
    comps: dict

    def __post_init__(self):
        for i, f in self.comps.items():
            if f.source.dims != self.source.term(i).dims or f.target.dims != self.target.term(i).dims:
                raise ValueError(f"chain map component at {i} does not match the terms there")

    def comp(self, i: int) -> SqMorphism:
        f = self.comps.get(i)
        if f is None:
            return SqMorphism.zero(self.source.term(i), self.target.term(i))
        return f

    def is_chain_map(self) -> bool:
        lo = min(self.source.lo, self.target.lo) - 1
        hi = max(self.source.hi, self.target.hi) + 1
        for i in range(lo, hi + 1):
            a = self.target.diff(i) @ self.comp(i)
            b = self.comp(i + 1) @ self.source.diff(i)
            if a != b:
                return False
        return True


# --- functors on complexes ---------------------------------------------------

def _map_terms(C: SqComplex, fmod, fmor) -> SqComplex:
    terms = tuple(fmod(t) for t in C.terms)
    diffs = tuple(fmor(d, terms[k], terms[k + 1]) for k, d in enumerate(C.diffs))
    return SqComplex(C.lo, terms, diffs)


def complex_functor_S(C) -> SqComplex:
    return _map_terms(as_complex(C), functor_S, resign_morphism)


def complex_functor_E(C) -> SqComplex:
    return _map_terms(as_complex(C), functor_E, resign_morphism)


def complex_dual_E(C) -> SqComplex:
    """Termwise dual with index negation: term^i = (N^(-i))*, d^i = (d^(-i-1))^T."""
    C = as_complex(C)
    terms = tuple(dual_E(t) for t in reversed(C.terms))
    k = len(terms)
    diffs = []
    for j in range(k - 1):
        # new position -hi + j -> -hi + j + 1 dualizes old d from index k-2-j
        old = C.diffs[k - 2 - j]
        diffs.append(dual_morphism(old, terms[j], terms[j + 1]))
    return SqComplex(-C.hi, terms, tuple(diffs))


def alexander(C) -> SqComplex | SqModule:
    """𝐀 = 𝒮 ∘ D_E ∘ ℰ on a module (returns a module) or a complex."""
    if isinstance(C, SqModule):
        from .modules import alexander_module

        return alexander_module(C)
    return complex_functor_S(complex_dual_E(complex_functor_E(C)))


def dual_E_any(N):
    if isinstance(N, SqModule):
        return dual_E(N)
    return complex_dual_E(N)


# --- shift and cone -----------------------------------------------------------

def shift(C, j: int) -> SqComplex:
    """C[j]: term^i = C^(i+j), differential (-1)^j d."""
    C = as_complex(C)
    if j % 2:
        diffs = tuple(d.scale(-1) for d in C.diffs)
    else:
        diffs = C.diffs
    return SqComplex(C.lo - j, C.terms, diffs)


def mapping_cone(f: ChainMap) -> SqComplex:
    """cone(f)^i = A^(i+1) ⊕ B^i with d = [[-d_A, 0], [f, d_B]]."""
    A, B = f.source, f.target
    if not f.is_chain_map():
        raise NotAChainMapError("mapping_cone needs a chain map")
    field = A.field
    n = A.n
    lo = min(A.lo - 1, B.lo)
    hi = max(A.hi - 1, B.hi)
    terms = []
    for i in range(lo, hi + 1):
        terms.append(direct_sum([A.term(i + 1), B.term(i)]))
    diffs = []
    for k, i in enumerate(range(lo, hi)):
        a1, a2 = A.term(i + 1), A.term(i + 2)
        b1, b2 = B.term(i), B.term(i + 1)
        dA = A.diff(i + 1)
        dB = B.diff(i)
        fi = f.comp(i + 1)
        comps = []
        for F in range(1 << n):
            comps.append(block(field, [a2.dims[F], b2.dims[F]], [a1.dims[F], b1.dims[F]], {
                (0, 0): dA.comps[F].scale(-1),
                (1, 0): fi.comps[F],
                (1, 1): dB.comps[F],
            }))
        diffs.append(SqMorphism(terms[k], terms[k + 1], tuple(comps)))
    return SqComplex(lo, tuple(terms), tuple(diffs))


def module_map_complex(f: SqMorphism, position: int = 0) -> ChainMap:
    """A module homomorphism viewed as a chain map between complexes at one position."""
    A = SqComplex.from_module(f.source, position)
    B = SqComplex.from_module(f.target, position)
    return ChainMap(A, B, {position: f})


# --- cohomology ------------------------------------------------------------------

def strand_cohomology_dims(strand, field: Field) -> tuple[int, dict[int, int]]:
    lo, dims, mats = strand
    ranks = [rank(m, field) for m in mats]
    out = {}
    for k, d in enumerate(dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k > 0 else 0
        h = d - r_out - r_in
        if h:
            out[lo + k] = h
    return lo, out


def cohomology_dims(C, n: int | None = None, field: Field | None = None) -> dict[int, tuple[int, ...]]:
    """i -> tuple of dim H^i(C)_F over all F, only for i with H^i != 0.

    Works on anything exposing ``strand(F)``, ``n`` and ``field``.
    """
    if isinstance(C, SqModule):
        C = SqComplex.from_module(C)
    n = C.n if n is None else n
    field = C.field if field is None else field
    table: dict[int, list[int]] = {}
    for F in range(1 << n):
        _, h = strand_cohomology_dims(C.strand(F), field)
        for i, v in h.items():
            table.setdefault(i, [0] * (1 << n))[F] = v
    return {i: tuple(v) for i, v in sorted(table.items())}


@dataclass(frozen=True)
class _HData:
    reps: Mat      # representatives of a basis of H (columns, in term coordinates)
    zb: Mat        # columns: basis of the image followed by reps; spans the cycles


def _cohomology_at(dm: Mat, dp: Mat, dim: int, field: Field) -> _HData:
    Z = kernel(dp) if dp.cols else Mat.identity(field, dim)
    if dm.cols and dm.rows:
        from ..exactla import image

        B = image(dm)
    else:
        B = Mat(field, dim, 0)
    # B in Z-coordinates, then complement
    if B.cols:
        Bz = solve(Z, B)
        if Bz is None:
            raise NotAComplexError("image not contained in kernel")
    else:
        Bz = Mat(field, Z.cols, 0)
    comp = complement_indices(Bz, Z.cols)
    reps = from_columns(field, dim, [Z.column(k) for k in comp]) if comp else Mat(field, dim, 0)
    zb = from_columns(field, dim, [B.column(k) for k in range(B.cols)] + [reps.column(k) for k in range(reps.cols)])
    return _HData(reps, zb)


def cohomology(C) -> dict[int, SqModule]:
    """H^i(C) as squarefree modules with induced structure maps (all i in range)."""
    C = as_complex(C)
    n, field = C.n, C.field
    out = {}
    for i in range(C.lo, C.hi + 1):
        T = C.term(i)
        hd = {}
        for F in range(1 << n):
            hd[F] = _cohomology_at(C.diff(i - 1).comps[F], C.diff(i).comps[F], T.dims[F], field)
        dims = tuple(hd[F].reps.cols for F in range(1 << n))
        maps = {}
        for F in range(1 << n):
            if not dims[F]:
                continue
            for b in range(n):
                G = F | 1 << b
                if G == F or not dims[G]:
                    continue
                img = T.map(F, b) @ hd[F].reps
                coords = solve(hd[G].zb, img)
                if coords is None:
                    raise NotAComplexError("structure map does not preserve cycles")
                nb = coords.rows - dims[G]
                m = coords.submatrix(range(nb, coords.rows), range(coords.cols))
                if not m.is_zero():
                    maps[(F, b)] = m
        out[i] = SqModule(n, dims, maps, field, C.side)
    return out
