"""Squarefree modules over S = K[x_1..x_n] and E = K<y_1..y_n>.

A squarefree module is determined by a vector space per subset F of [n] and,
for every ``i`` not in F, a structure map from degree F to degree F ∪ {i}.
On the S side this is multiplication by x_i, on the E side the action of y_i
(degree -F to -(F ∪ {i})).  Subsets are bitmasks, variable ``i`` is bit ``i``
(0-based internally, vertex ``i + 1`` in all I/O).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from math import inf

from ..exactla import (
    Field,
    MalformedInputError,
    Mat,
    block,
    nullspace_sparse,
)
from ..simplicial import SimplicialComplex, popcount

NEG_INF = -inf

SIDES = ("S", "E")


def alpha(i: int, F: int) -> int:
    """#{j in F : j < i}."""
    return popcount(F & ((1 << i) - 1))


def sub_masks(F: int):
    """All subsets of F, including 0 and F."""
    sub = F
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & F


def bits(F: int) -> list[int]:
    out = []
    b = 0
    while F:
        if F & 1:
            out.append(b)
        F >>= 1
        b += 1
    return out


def masks_by_size(n: int) -> list[int]:
    """All subsets of [n], ordered by size then value."""
    return sorted(range(1 << n), key=lambda m: (popcount(m), m))


@dataclass(frozen=True, eq=False)
class SqModule:
    """A squarefree S-module (``side='S'``) or E-module (``side='E'``).

    ``maps[(F, i)]`` has shape ``dims[F | 1<<i] x dims[F]``; absent entries are
    zero maps.  Zero-dimensional components never carry stored maps.
    """

    n: int
    dims: tuple[int, ...]
    maps: dict = dc_field(default_factory=dict)
    field: Field = dc_field(default_factory=Field)
    side: str = "S"

    def __post_init__(self):
        if self.side not in SIDES:
            raise MalformedInputError(f"side must be 'S' or 'E', got {self.side!r}")
        if len(self.dims) != 1 << self.n:
            raise MalformedInputError("dims must have one entry per subset of [n]")
        for (F, i), m in self.maps.items():
            if F >> i & 1:
                raise MalformedInputError(f"map key ({F}, {i}) has i in F")
            if m.shape != (self.dims[F | 1 << i], self.dims[F]):
                raise MalformedInputError(f"map ({F}, {i}) has wrong shape {m.shape}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def map(self, F: int, i: int) -> Mat:
        m = self.maps.get((F, i))
        if m is None:
            return Mat(self.field, self.dims[F | 1 << i], self.dims[F])
        return m

    def path(self, F: int, G: int) -> Mat:
        """Composite structure map from degree F to degree G ⊇ F (increasing order of G \\ F)."""
        out = Mat.identity(self.field, self.dims[F])
        cur = F
        for i in bits(G & ~F):
            out = self.map(cur, i) @ out
            cur |= 1 << i
        return out

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def support(self) -> list[int]:
        return [F for F, d in enumerate(self.dims) if d]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SqModule):
            return NotImplemented
        if (self.n, self.side, self.dims, self.field) != (other.n, other.side, other.dims, other.field):
            return False
        keys = set(self.maps) | set(other.maps)
        return all(self.map(F, i) == other.map(F, i) for F, i in keys)

    __hash__ = None  # type: ignore[assignment]

    def check(self) -> None:
        """Raise ValueError unless the structure maps (anti-)commute."""
        sgn = -1 if self.side == "E" else 1
        for F in range(1 << self.n):
            if not self.dims[F]:
                continue
            for i in range(self.n):
                if F >> i & 1:
                    continue
                for j in range(i + 1, self.n):
                    if F >> j & 1:
                        continue
                    a = self.map(F | 1 << i, j) @ self.map(F, i)
                    b = self.map(F | 1 << j, i) @ self.map(F, j)
                    if a != b.scale(sgn):
                        kind = "anti-commute" if sgn < 0 else "commute"
                        raise ValueError(f"structure maps x{i + 1}, x{j + 1} do not {kind} at {bits(F)}")

    def __repr__(self) -> str:
        return f"SqModule(side={self.side}, n={self.n}, dims={list(self.dims)})"

    # --- serialization ---

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "n": self.n,
            "field": self.field.name,
            "dims": {str(F): d for F, d in enumerate(self.dims) if d},
            "maps": {
                f"{F},{i + 1}": m.to_strings()
                for (F, i), m in sorted(self.maps.items())
                if m.rows and m.cols and not m.is_zero()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "SqModule":
        try:
            field = Field.parse(d.get("field", "q"))
            n = int(d["n"])
            side = d.get("side", "S")
            dims = [0] * (1 << n)
            for k, v in d["dims"].items():
                dims[int(k)] = int(v)
            maps = {}
            for k, rows in d.get("maps", {}).items():
                F_s, i_s = k.split(",")
                F, i = int(F_s), int(i_s) - 1
                maps[(F, i)] = Mat(field, dims[F | 1 << i], dims[F], [[field.parse_element(x) for x in r] for r in rows])
        except (KeyError, ValueError, TypeError, IndexError, AttributeError) as e:
            if isinstance(e, MalformedInputError):
                raise
            raise MalformedInputError(f"malformed module JSON: {e}") from None
        return cls(n, tuple(dims), maps, field, side)


def zero_module(n: int, field: Field, side: str = "S") -> SqModule:
    return SqModule(n, (0,) * (1 << n), {}, field, side)


def _unit_maps(n: int, dims, field: Field, sign_fn) -> dict:
    maps = {}
    for F in range(1 << n):
        if not dims[F]:
            continue
        for i in range(n):
            G = F | 1 << i
            if G != F and dims[G]:
                maps[(F, i)] = Mat(field, 1, 1, [[field(sign_fn(i, F))]])
    return maps


def sr_module(delta: SimplicialComplex, which: str = "face-ring", side: str = "S", field: Field | None = None) -> SqModule:
    """K[Δ] / I_Δ (side S) or K{Δ} / J_Δ (side E) on monomial bases."""
    field = field or Field(0)
    n = delta.n
    faces = delta.faces
    if which in ("face-ring", "ring", "quotient"):
        dims = tuple(1 if F in faces else 0 for F in range(1 << n))
    elif which == "ideal":
        dims = tuple(0 if F in faces else 1 for F in range(1 << n))
    else:
        raise MalformedInputError(f"unknown Stanley-Reisner object {which!r}")
    if side == "S":
        maps = _unit_maps(n, dims, field, lambda i, F: 1)
    else:
        maps = _unit_maps(n, dims, field, lambda i, F: -1 if alpha(i, F) & 1 else 1)
    return SqModule(n, dims, maps, field, side)


def free_module(n: int, field: Field, side: str = "S") -> SqModule:
    """The squarefree part of S (side S) or E itself (side E)."""
    return sr_module(SimplicialComplex.simplex(n), "face-ring", side, field)


def residue_field(n: int, field: Field, side: str = "S") -> SqModule:
    """K concentrated in degree ∅."""
    return sr_module(SimplicialComplex.irrelevant(n), "face-ring", side, field)


def _resign(M: SqModule, side: str) -> SqModule:
    maps = {}
    for (F, i), m in M.maps.items():
        maps[(F, i)] = m.scale(-1) if alpha(i, F) & 1 else m
    return SqModule(M.n, M.dims, maps, M.field, side)


def functor_S(N: SqModule) -> SqModule:
    """E-module to S-module: x_i acts as (-1)^alpha(i,F) y_i."""
    if N.side != "E":
        raise ValueError("functor_S expects an E-module")
    return _resign(N, "S")


def functor_E(M: SqModule) -> SqModule:
    """Inverse of :func:`functor_S`."""
    if M.side != "S":
        raise ValueError("functor_E expects an S-module")
    return _resign(M, "E")


def dual_E(N: SqModule) -> SqModule:
    """N* with (N*)_{-F} = (N_{-([n] \\ F)})^∨ and transposed actions."""
    if N.side != "E":
        raise ValueError("dual_E expects an E-module")
    full = N.full
    dims = tuple(N.dims[full ^ F] for F in range(1 << N.n))
    maps = {}
    for (G, i), m in N.maps.items():
        # act_{i, G} : N_{-G} -> N_{-(G+i)} dualizes to the action out of degree -([n] \ (G+i))
        maps[(full ^ (G | 1 << i), i)] = m.T()
    return SqModule(N.n, dims, maps, N.field, "E")


def alexander_module(M: SqModule) -> SqModule:
    """The Alexander duality functor on a single squarefree S-module."""
    return functor_S(dual_E(functor_E(M)))


def direct_sum(mods: list[SqModule]) -> SqModule:
    if not mods:
        raise ValueError("direct_sum of nothing")
    n, field, side = mods[0].n, mods[0].field, mods[0].side
    dims = tuple(sum(m.dims[F] for m in mods) for F in range(1 << n))
    maps = {}
    for F in range(1 << n):
        if not dims[F]:
            continue
        for i in range(n):
            G = F | 1 << i
            if G == F or not dims[G]:
                continue
            blocks = {(k, k): m.map(F, i) for k, m in enumerate(mods) if (F, i) in m.maps}
            if blocks:
                maps[(F, i)] = block(field, [m.dims[G] for m in mods], [m.dims[F] for m in mods], blocks)
    return SqModule(n, dims, maps, field, side)


@dataclass(frozen=True, eq=False)
class SqMorphism:
    """Degree-preserving homomorphism; ``comps[F]`` maps source_F to target_F."""

    source: SqModule
    target: SqModule
    comps: tuple

    def __post_init__(self):
        s, t = self.source, self.target
        if s.n != t.n or s.side != t.side:
            raise MalformedInputError("morphism between incompatible modules")
        if len(self.comps) != 1 << s.n:
            raise MalformedInputError("morphism needs one component per subset")
        for F, m in enumerate(self.comps):
            if m.shape != (t.dims[F], s.dims[F]):
                raise MalformedInputError(f"component {F} has shape {m.shape}")

    @classmethod
    def zero(cls, source: SqModule, target: SqModule) -> "SqMorphism":
        f = source.field
        return cls(source, target, tuple(Mat(f, target.dims[F], source.dims[F]) for F in range(1 << source.n)))

    @classmethod
    def identity(cls, M: SqModule) -> "SqMorphism":
        return cls(M, M, tuple(Mat.identity(M.field, d) for d in M.dims))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps)

    def scale(self, c) -> "SqMorphism":
        return SqMorphism(self.source, self.target, tuple(m.scale(c) for m in self.comps))

    def __matmul__(self, other: "SqMorphism") -> "SqMorphism":
        return SqMorphism(other.source, self.target, tuple(a @ b for a, b in zip(self.comps, other.comps)))

    def __add__(self, other: "SqMorphism") -> "SqMorphism":
        return SqMorphism(self.source, self.target, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SqMorphism):
            return NotImplemented
        return self.comps == other.comps

    __hash__ = None  # type: ignore[assignment]

    def is_homomorphism(self) -> bool:
        s, t = self.source, self.target
        for F in range(1 << s.n):
            for i in range(s.n):
                if F >> i & 1:
                    continue
                G = F | 1 << i
                if not (s.dims[F] and t.dims[G]):
                    continue
                if self.comps[G] @ s.map(F, i) != t.map(F, i) @ self.comps[F]:
                    return False
        return True

    def check(self) -> None:
        if not self.is_homomorphism():
            raise ValueError("morphism does not commute with the structure maps")

    def to_dict(self) -> dict:
        return {str(F): m.to_strings() for F, m in enumerate(self.comps) if m.rows and m.cols and not m.is_zero()}


def resign_morphism(f: SqMorphism, source: SqModule, target: SqModule) -> SqMorphism:
    """Same matrices, new endpoints (functor_S / functor_E on morphisms)."""
    return SqMorphism(source, target, f.comps)


def dual_morphism(f: SqMorphism, source: SqModule, target: SqModule) -> SqMorphism:
    """Transpose with degree complementation; ``source``/``target`` are the dual modules."""
    full = f.source.full
    return SqMorphism(source, target, tuple(f.comps[full ^ F].T() for F in range(1 << f.source.n)))


# --- Hom spaces ------------------------------------------------------------

def _hom_index(M: SqModule, N: SqModule):
    offsets = []
    k = 0
    for F in range(1 << M.n):
        offsets.append(k)
        k += M.dims[F] * N.dims[F]
    return offsets, k


def hom_equations(M: SqModule, N: SqModule) -> tuple[list[dict], int, list[int]]:
    """Sparse linear equations whose solutions are the homomorphisms M -> N.

    Unknown ``offsets[F] + r * dims_M[F] + c`` is entry ``(r, c)`` of the
    component at F.
    """
    field = M.field
    offsets, nvars = _hom_index(M, N)
    rows: list[dict] = []
    for F in range(1 << M.n):
        a, b = M.dims[F], N.dims[F]
        for i in range(M.n):
            if F >> i & 1:
                continue
            G = F | 1 << i
            a2, b2 = M.dims[G], N.dims[G]
            if not (a and b2):
                continue
            mM = M.map(F, i)  # a2 x a
            mN = N.map(F, i)  # b2 x b
            # phi_G @ mM - mN @ phi_F = 0, entry (r, c) for r < b2, c < a
            for r in range(b2):
                for c in range(a):
                    eq: dict = {}
                    for k in range(a2):
                        v = mM.data[k][c]
                        if v:
                            idx = offsets[G] + r * a2 + k
                            eq[idx] = eq.get(idx, 0) + v
                    for k in range(b):
                        v = mN.data[r][k]
                        if v:
                            idx = offsets[F] + k * a + c
                            eq[idx] = eq.get(idx, 0) - v
                    eq = {kk: field(vv) for kk, vv in eq.items()}
                    eq = {kk: vv for kk, vv in eq.items() if vv}
                    if eq:
                        rows.append(eq)
    return rows, nvars, offsets


def _vector_to_morphism(M: SqModule, N: SqModule, vec, offsets) -> SqMorphism:
    comps = []
    for F in range(1 << M.n):
        a, b = M.dims[F], N.dims[F]
        o = offsets[F]
        comps.append(Mat(M.field, b, a, [list(vec[o + r * a: o + (r + 1) * a]) for r in range(b)]))
    return SqMorphism(M, N, tuple(comps))


def hom_space(M: SqModule, N: SqModule) -> list[SqMorphism]:
    """A basis of the space of degree-preserving homomorphisms M -> N."""
    if M.n != N.n or M.side != N.side or M.field != N.field:
        raise ValueError("hom_space: incompatible modules")
    rows, nvars, offsets = hom_equations(M, N)
    basis = nullspace_sparse(rows, nvars, M.field)
    return [_vector_to_morphism(M, N, v, offsets) for v in basis]


def random_combination(basis: list[SqMorphism], rng: random.Random, source: SqModule, target: SqModule,
                       lo: int = -3, hi: int = 3) -> SqMorphism:
    out = SqMorphism.zero(source, target)
    for f in basis:
        c = rng.randint(lo, hi)
        if c:
            out = out + f.scale(c)
    return out


def is_isomorphic(M: SqModule, N: SqModule, tries: int = 8, seed: int = 0) -> bool:
    """Search for an isomorphism among random elements of Hom(M, N).

    A True answer is certified (the witness is invertible in every degree).
    Over small fields a False answer can in principle be a miss.
    """
    from ..exactla import rank

    if M.dims != N.dims or M.side != N.side:
        return False
    basis = hom_space(M, N)
    rng = random.Random(seed)
    span = 10**6 if M.field.characteristic == 0 else M.field.characteristic
    for _ in range(tries):
        phi = random_combination(basis, rng, M, N, -span, span)
        if all(rank(m) == d for m, d in zip(phi.comps, M.dims)):
            return True
    return False


# --- Hilbert data, primes ----------------------------------------------------

@dataclass(frozen=True)
class HilbertData:
    """Krull dimension (``-inf`` for 0), multiplicity (None for 0), numerator Q(t) coefficients."""

    dim: float | int
    deg: int | None
    numerator: tuple[int, ...]


def krull_dim_of_dims(dims, n: int) -> float | int:
    best = NEG_INF
    for F, d in enumerate(dims):
        if d:
            k = popcount(F)
            if k > best:
                best = k
    return best


def degree_of_dims(dims) -> int | None:
    d = NEG_INF
    for F, v in enumerate(dims):
        if v:
            d = max(d, popcount(F))
    if d == NEG_INF:
        return None
    return sum(v for F, v in enumerate(dims) if v and popcount(F) == d)


def hilbert_data_of_dims(dims) -> HilbertData:
    d = krull_dim_of_dims(dims, 0)
    if d == NEG_INF:
        return HilbertData(NEG_INF, None, ())
    from math import comb

    q = [0] * (d + 1)
    for F, v in enumerate(dims):
        if not v:
            continue
        k = popcount(F)
        # t^k (1 - t)^(d - k)
        for e in range(d - k + 1):
            q[k + e] += v * comb(d - k, e) * (-1) ** e
    return HilbertData(d, sum(q), tuple(q))


def hilbert_data(M: SqModule) -> HilbertData:
    """Hilbert series sum_F dim M_F t^|F| / (1-t)^|F| written over (1-t)^dim."""
    return hilbert_data_of_dims(M.dims)


def maximal_support(dims) -> frozenset[int]:
    supp = [F for F, d in enumerate(dims) if d]
    out = []
    for F in supp:
        if not any(G != F and G & F == F for G in supp):
            out.append(F)
    return frozenset(out)


def minimal_primes(M: SqModule) -> frozenset[int]:
    """Subsets F with P_F a minimal prime, i.e. the maximal elements of the support."""
    return maximal_support(M.dims)
