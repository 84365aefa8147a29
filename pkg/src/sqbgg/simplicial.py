"""Simplicial complexes on the ground set [n] = {1, ..., n}.

Faces are stored as n-bit masks (vertex ``v`` is bit ``v - 1``).  A complex is
given by its facets; the void complex (no faces at all) is distinguished from
the irrelevant complex ``{∅}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .exactla import Field, Mat, MalformedInputError, QQ, rank_data

MAX_N = 24


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_to_vertices(mask: int) -> list[int]:
    """1-based sorted vertex list of a bitmask."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def vertices_to_mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def format_subset(mask: int) -> str:
    """Comma-joined vertices, ``-`` for the empty set."""
    return ",".join(map(str, mask_to_vertices(mask))) or "-"


def _maximal(masks) -> frozenset[int]:
    ms = sorted(set(masks), key=popcount, reverse=True)
    keep: list[int] = []
    for m in ms:
        if not any(m | k == k for k in keep):
            keep.append(m)
    return frozenset(keep)


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on [n] given by pairwise incomparable facets.

    ``facets`` empty means the void complex; ``facets == {0}`` is ``{∅}``.
    """

    n: int
    facets: frozenset[int]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise MalformedInputError(f"ground set size {self.n} out of range 0..{MAX_N}")
        full = (1 << self.n) - 1
        for f in self.facets:
            if f < 0 or f & ~full:
                raise MalformedInputError(f"facet {mask_to_vertices(f)} not inside [{self.n}]")
        if _maximal(self.facets) != self.facets:
            raise MalformedInputError("facets are not pairwise incomparable")

    @classmethod
    def from_facets(cls, n: int, facets) -> "SimplicialComplex":
        """Build from any iterable of bitmasks; non-maximal entries are dropped."""
        return cls(n, _maximal(facets))

    @classmethod
    def from_vertex_lists(cls, n: int, facets) -> "SimplicialComplex":
        masks = []
        for f in facets:
            for v in f:
                if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
                    raise MalformedInputError(f"vertex {v!r} out of range 1..{n}")
            masks.append(vertices_to_mask(f))
        return cls.from_facets(n, masks)

    @classmethod
    def from_faces(cls, n: int, faces) -> "SimplicialComplex":
        return cls.from_facets(n, faces)

    @classmethod
    def void(cls, n: int) -> "SimplicialComplex":
        return cls(n, frozenset())

    @classmethod
    def irrelevant(cls, n: int) -> "SimplicialComplex":
        return cls(n, frozenset({0}))

    @classmethod
    def simplex(cls, n: int) -> "SimplicialComplex":
        return cls(n, frozenset({(1 << n) - 1}))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def is_void(self) -> bool:
        return not self.facets

    @cached_property
    def faces(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.facets:
            if f in out:
                continue
            sub = f
            while True:
                out.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return frozenset(out)

    def __contains__(self, face: int) -> bool:
        return face in self.faces

    def minimal_nonfaces(self) -> frozenset[int]:
        faces = self.faces
        out = []
        for m in range(1 << self.n):
            if m in faces:
                continue
            if all((m & ~(1 << b)) in faces for b in range(self.n) if m >> b & 1):
                out.append(m)
        return frozenset(out)

    def sorted_facets(self) -> list[list[int]]:
        return sorted(mask_to_vertices(f) for f in self.facets)

    def to_dict(self) -> dict:
        d: dict = {"n": self.n, "facets": self.sorted_facets()}
        if self.is_void:
            d["void"] = True
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d) -> "SimplicialComplex":
        if not isinstance(d, dict) or "n" not in d:
            raise MalformedInputError("complex JSON needs an object with key 'n'")
        n = d["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise MalformedInputError(f"'n' must be an integer, got {n!r}")
        facets = d.get("facets", [])
        if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
            raise MalformedInputError("'facets' must be a list of vertex lists")
        void = d.get("void", False)
        if void and facets:
            raise MalformedInputError("a void complex cannot have facets")
        return cls.from_vertex_lists(n, facets)

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise MalformedInputError(f"malformed JSON: {e}") from None
        return cls.from_dict(d)

    def __repr__(self) -> str:
        if self.is_void:
            return f"SimplicialComplex(n={self.n}, void)"
        return f"SimplicialComplex(n={self.n}, facets={self.sorted_facets()})"


def alexander_dual(delta: SimplicialComplex) -> SimplicialComplex:
    """{F : [n] \\ F is not a face}; facets are complements of the minimal non-faces."""
    full = delta.full
    return SimplicialComplex(delta.n, frozenset(full ^ m for m in delta.minimal_nonfaces()))


def induced_subcomplex(delta: SimplicialComplex, subset: int) -> SimplicialComplex:
    """Restriction to ``subset``, relabelled order-preservingly onto [|subset|]."""
    verts = [b for b in range(delta.n) if subset >> b & 1]
    relabel = {b: k for k, b in enumerate(verts)}
    facets = set()
    for f in delta.facets:
        g = f & subset
        facets.add(sum(1 << relabel[b] for b in range(delta.n) if g >> b & 1))
    return SimplicialComplex.from_facets(len(verts), facets)


def _boundary_rows(faces_lo: list[int], faces_hi: list[int], field: Field) -> list[list]:
    """Boundary matrix from faces of size k+1 (columns) to size k (rows)."""
    index = {f: i for i, f in enumerate(faces_lo)}
    data = [[0] * len(faces_hi) for _ in faces_lo]
    minus = field(-1)
    for j, f in enumerate(faces_hi):
        pos = 0
        b = 0
        g = f
        while g:
            if g & 1:
                data[index[f & ~(1 << b)]][j] = 1 if pos % 2 == 0 else minus
                pos += 1
            g >>= 1
            b += 1
    return data


def reduced_homology(delta: SimplicialComplex, field: Field = QQ) -> list[int]:
    """Reduced homology dimensions, entry ``k`` is for degree ``k - 1`` (degrees -1 .. n-1)."""
    n = delta.n
    by_size: list[list[int]] = [[] for _ in range(n + 1)]
    for f in delta.faces:
        by_size[popcount(f)].append(f)
    for lst in by_size:
        lst.sort()
    ranks = [0] * (n + 2)  # ranks[k] = rank of boundary from size-k faces to size-(k-1) faces
    for k in range(1, n + 1):
        if by_size[k] and by_size[k - 1]:
            ranks[k] = rank_data(_boundary_rows(by_size[k - 1], by_size[k], field), field)
    return [len(by_size[k]) - ranks[k] - ranks[k + 1] for k in range(n + 1)]


def reduced_homology_at(delta: SimplicialComplex, degree: int, field: Field = QQ) -> int:
    """h̃_degree; zero outside -1 .. n-1."""
    if not -1 <= degree <= delta.n - 1:
        return 0
    return reduced_homology(delta, field)[degree + 1]


def boundary_matrix(delta: SimplicialComplex, size: int, field: Field = QQ) -> Mat:
    """Augmented boundary map from faces with ``size`` vertices to faces with ``size - 1``."""
    hi = sorted(f for f in delta.faces if popcount(f) == size)
    lo = sorted(f for f in delta.faces if popcount(f) == size - 1)
    if not hi or not lo:
        return Mat(field, len(lo), len(hi))
    return Mat(field, len(lo), len(hi), _boundary_rows(lo, hi, field))


def all_faces_of_size(n: int, k: int) -> list[int]:
    return sorted(sum(1 << b for b in c) for c in combinations(range(n), k))
