"""Exact linear algebra over the rationals and prime fields.

Matrices are small (a few dozen rows at most) and dense, so everything is
plain Gaussian elimination on Python lists.  Rational entries are stored as
``int`` whenever they are integral and as :class:`fractions.Fraction`
otherwise; prime-field entries are ``int`` in ``range(p)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class MalformedInputError(ValueError):
    """Input data that cannot be interpreted (bad entry, bad modulus, ...)."""


class NotAComplexError(ValueError):
    """A pair of maps was declared a complex but the composite is nonzero."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


class Field:
    """The prime field of a given characteristic (0 means the rationals)."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if not isinstance(characteristic, int) or isinstance(characteristic, bool):
            raise MalformedInputError(f"characteristic must be an int, got {characteristic!r}")
        if characteristic != 0 and not (_is_prime(characteristic) and characteristic < 2**31):
            raise MalformedInputError(f"characteristic {characteristic} is not 0 or a prime < 2^31")
        self.characteristic = characteristic

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``q`` (rationals) or ``fp:<p>``."""
        t = text.strip().lower()
        if t in ("q", "qq", "0"):
            return cls(0)
        if t.startswith("fp:") or t.startswith("gf:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise MalformedInputError(f"bad field modulus in {text!r}") from None
            try:
                return cls(p)
            except MalformedInputError as e:
                raise MalformedInputError(f"{text!r}: {e}") from None
        raise MalformedInputError(f"unknown field {text!r} (use 'q' or 'fp:<p>')")

    @property
    def p(self) -> int:
        return self.characteristic

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Field", self.characteristic))

    def __repr__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def name(self) -> str:
        return "q" if self.characteristic == 0 else f"fp:{self.characteristic}"

    def __call__(self, x) -> int | Fraction:
        """Coerce an int, Fraction or exact string into the field."""
        if isinstance(x, str):
            return self.parse_element(x)
        p = self.characteristic
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % p if p else x
        if isinstance(x, Fraction):
            if p == 0:
                return x.numerator if x.denominator == 1 else x
            if x.denominator % p == 0:
                raise MalformedInputError(f"{x} has denominator divisible by {p}")
            return x.numerator * pow(x.denominator, p - 2, p) % p
        raise MalformedInputError(f"cannot coerce {x!r} into {self!r}")

    def parse_element(self, s: str) -> int | Fraction:
        s = s.strip()
        if " mod " in s:
            a, _, m = s.partition(" mod ")
            try:
                m_int = int(m)
            except ValueError:
                raise MalformedInputError(f"bad modulus in entry {s!r}") from None
            if m_int != self.characteristic:
                raise MalformedInputError(f"entry {s!r} does not live in {self!r}")
            s = a
        try:
            return self(Fraction(s))
        except (ValueError, ZeroDivisionError):
            raise MalformedInputError(f"bad field entry {s!r}") from None

    def format_element(self, x) -> str:
        if self.characteristic:
            return f"{x} mod {self.characteristic}"
        return str(x)

    def inv(self, x):
        p = self.characteristic
        if p:
            return pow(x, p - 2, p)
        f = Fraction(1) / x
        return f.numerator if f.denominator == 1 else f

    def neg(self, x):
        p = self.characteristic
        return (-x) % p if p else -x

    def sign(self, e: int):
        """(-1)**e as a field element."""
        return self(-1 if e & 1 else 1)


QQ = Field(0)
GF2 = Field(2)


def _norm_q(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Mat:
    """A dense matrix over a :class:`Field`; treated as immutable.

    ``data`` is a list of ``rows`` lists of length ``cols``.  Matrices act on
    column vectors, so a map ``K^a -> K^b`` is a ``b x a`` matrix.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data: list[list] | None = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [[0] * cols for _ in range(rows)]
        elif len(data) != rows or any(len(r) != cols for r in data):
            raise MalformedInputError(f"matrix data does not have shape {rows}x{cols}")
        self.data = data

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        data = [[field(x) for x in r] for r in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(field, len(data), cols, data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, k: int) -> "Mat":
        data = [[0] * k for _ in range(k)]
        for i in range(k):
            data[i][i] = 1
        return cls(field, k, k, data)

    @classmethod
    def scalar(cls, field: Field, k: int, c) -> "Mat":
        c = field(c)
        data = [[0] * k for _ in range(k)]
        for i in range(k):
            data[i][i] = c
        return cls(field, k, k, data)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __repr__(self) -> str:
        return f"Mat({self.field!r}, {self.rows}x{self.cols}, {self.data})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def T(self) -> "Mat":
        if self.rows == 0 or self.cols == 0:
            return Mat(self.field, self.cols, self.rows)
        return Mat(self.field, self.cols, self.rows, [list(c) for c in zip(*self.data)])

    def scale(self, c) -> "Mat":
        c = self.field(c)
        if c == 1:
            return self
        p = self.field.characteristic
        if p:
            data = [[x * c % p for x in r] for r in self.data]
        else:
            data = [[_norm_q(x * c) for x in r] for r in self.data]
        return Mat(self.field, self.rows, self.cols, data)

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        p = self.field.characteristic
        if p:
            data = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        else:
            data = [[_norm_q(a + b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Mat(self.field, self.rows, self.cols, data)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.field.characteristic
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat(self.field, self.rows, other.cols)
        cols = list(zip(*other.data))
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                s = 0
                for k, a in nz:
                    b = c[k]
                    if b:
                        s += a * b
                row.append(s % p if p else _norm_q(s))
            out.append(row)
        return Mat(self.field, self.rows, other.cols, out)

    def apply(self, v: Sequence) -> list:
        """Matrix times a column vector given as a list."""
        p = self.field.characteristic
        out = []
        for r in self.data:
            s = 0
            for a, b in zip(r, v):
                if a and b:
                    s += a * b
            out.append(s % p if p else _norm_q(s))
        return out

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        d = self.data
        return Mat(self.field, len(rows), len(cols), [[d[i][j] for j in cols] for i in rows])

    def to_strings(self) -> list[list[str]]:
        fmt = self.field.format_element
        return [[fmt(x) for x in r] for r in self.data]


def from_columns(field: Field, nrows: int, columns: Sequence[Sequence]) -> Mat:
    if not columns:
        return Mat(field, nrows, 0)
    return Mat(field, nrows, len(columns), [list(r) for r in zip(*columns)])


def hstack(mats: Sequence[Mat], field: Field, rows: int) -> Mat:
    data = [[] for _ in range(rows)]
    cols = 0
    for m in mats:
        if m.rows != rows:
            raise ValueError("hstack row mismatch")
        for i in range(rows):
            data[i].extend(m.data[i])
        cols += m.cols
    return Mat(field, rows, cols, data)


def vstack(mats: Sequence[Mat], field: Field, cols: int) -> Mat:
    data = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("vstack column mismatch")
        data.extend(list(r) for r in m.data)
    return Mat(field, len(data), cols, data)


def block(field: Field, row_sizes: Sequence[int], col_sizes: Sequence[int], blocks: dict) -> Mat:
    """Assemble a block matrix; ``blocks[(r, c)]`` is a :class:`Mat`, missing blocks are zero."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    data = [[0] * coff[-1] for _ in range(roff[-1])]
    for (r, c), m in blocks.items():
        if m.shape != (row_sizes[r], col_sizes[c]):
            raise ValueError(f"block {(r, c)} has shape {m.shape}, expected {(row_sizes[r], col_sizes[c])}")
        r0, c0 = roff[r], coff[c]
        for i, row in enumerate(m.data):
            data[r0 + i][c0:c0 + m.cols] = row
    return Mat(field, roff[-1], coff[-1], data)


# --- rank -----------------------------------------------------------------

def _rank_gf2(data: list[list]) -> int:
    basis: dict[int, int] = {}
    for r in data:
        v = 0
        for j, x in enumerate(r):
            if x & 1:
                v |= 1 << j
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                break
            v ^= b
    return len(basis)


def _rank_gfp(data: list[list], p: int) -> int:
    rows = [list(r) for r in data if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for k in range(rank, len(rows)):
            if rows[k][c]:
                piv = k
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = pow(pr[c], p - 2, p)
        for k in range(rank + 1, len(rows)):
            f = rows[k][c]
            if f:
                f = f * inv % p
                rk = rows[k]
                for j in range(c, ncols):
                    if pr[j]:
                        rk[j] = (rk[j] - f * pr[j]) % p
        rank += 1
        if rank == len(rows):
            break
    return rank


def _integer_rows(data: list[list]) -> list[list[int]]:
    out = []
    for r in data:
        if not any(r):
            continue
        den = 1
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // gcd(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in r])
        else:
            out.append([int(x * den) for x in r])
    return out


def _rank_q(data: list[list]) -> int:
    # fraction-free elimination, rows kept primitive
    rows = _integer_rows(data)
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = None
        best = None
        for k in range(rank, len(rows)):
            v = rows[k][c]
            if v and (best is None or abs(v) < best):
                piv, best = k, abs(v)
                if best == 1:
                    break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        a = pr[c]
        for k in range(rank + 1, len(rows)):
            b = rows[k][c]
            if b:
                rk = rows[k]
                new = [0] * ncols
                g = 0
                for j in range(c + 1, ncols):
                    v = a * rk[j] - b * pr[j]
                    new[j] = v
                    if v:
                        g = gcd(g, v)
                if g > 1:
                    new = [v // g for v in new]
                rows[k] = new
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank(m: Mat, field: Field | None = None) -> int:
    """Row rank of ``m``; 0 for empty matrices."""
    field = field or m.field
    if m.rows == 0 or m.cols == 0:
        return 0
    p = field.characteristic
    if p == 2:
        return _rank_gf2(m.data)
    if p:
        return _rank_gfp(m.data, p)
    return _rank_q(m.data)


def rank_data(data: list[list], field: Field) -> int:
    """Rank of a raw list-of-rows matrix (entries already in ``field``)."""
    if not data or not data[0]:
        return 0
    p = field.characteristic
    if p == 2:
        return _rank_gf2(data)
    if p:
        return _rank_gfp(data, p)
    return _rank_q(data)


# --- reduced row echelon form and derived operations -----------------------

def rref(m: Mat) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    f = m.field
    p = f.characteristic
    rows = [list(r) for r in m.data if any(r)]
    ncols = m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for k in range(r, len(rows)):
            if rows[k][c]:
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = f.inv(pr[c])
        if p:
            pr = [x * inv % p for x in pr]
        else:
            pr = [_norm_q(x * inv) if x else 0 for x in pr]
        rows[r] = pr
        for k in range(len(rows)):
            if k != r:
                v = rows[k][c]
                if v:
                    rk = rows[k]
                    if p:
                        rows[k] = [(a - v * b) % p for a, b in zip(rk, pr)]
                    else:
                        rows[k] = [_norm_q(a - v * b) if b else a for a, b in zip(rk, pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel(m: Mat) -> Mat:
    """A basis of the right kernel of ``m``, as the columns of a matrix."""
    f = m.field
    R, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    vecs = []
    for fc in free:
        v = [0] * m.cols
        v[fc] = 1
        for row, pc in zip(R, pivots):
            if row[fc]:
                v[pc] = f.neg(row[fc])
        vecs.append(v)
    return from_columns(f, m.cols, vecs)


def image(m: Mat) -> Mat:
    """A basis of the column space of ``m`` (a subset of its columns)."""
    _, pivots = rref(m)
    return m.submatrix(range(m.rows), pivots)


def complement_indices(m: Mat, ambient: int) -> list[int]:
    """Standard basis indices ``k`` such that ``{e_k}`` complements the column span of ``m``."""
    if m.cols == 0:
        return list(range(ambient))
    _, pivots = rref(m.T())
    pv = set(pivots)
    return [k for k in range(ambient) if k not in pv]


def solve(a: Mat, b: Mat) -> Mat | None:
    """A solution ``x`` of ``a @ x == b`` (free variables zero), or None."""
    f = a.field
    if a.rows != b.rows:
        raise ValueError("solve: row mismatch")
    aug = hstack([a, b], f, a.rows)
    R, pivots = rref(aug)
    if any(pc >= a.cols for pc in pivots):
        return None
    x = [[0] * b.cols for _ in range(a.cols)]
    for row, pc in zip(R, pivots):
        x[pc] = row[a.cols:]
    return Mat(f, a.cols, b.cols, x)


def homology_dim(d_in: Mat, d_out: Mat, field: Field | None = None) -> int:
    """Dimension of ker(d_out) / im(d_in) at the middle space of a complex.

    Raises NotAComplexError if ``d_out @ d_in`` is nonzero.
    """
    field = field or d_in.field
    if d_in.rows != d_out.cols:
        raise ValueError(f"incompatible maps: d_in {d_in.shape}, d_out {d_out.shape}")
    if not (d_out @ d_in).is_zero():
        raise NotAComplexError("d_out composed with d_in is nonzero")
    return d_in.rows - rank(d_out, field) - rank(d_in, field)


def nullspace_sparse(rows: Iterable[dict[int, object]], ncols: int, field: Field) -> list[list]:
    """Basis of ``{x : r . x = 0 for every row r}`` for sparse rows ``{col: coeff}``."""
    p = field.characteristic
    piv_rows: dict[int, dict[int, object]] = {}  # pivot col -> reduced row with coeff 1 at pivot

    def reduce(r: dict) -> dict:
        r = {c: v for c, v in r.items() if v}
        changed = True
        while changed:
            changed = False
            for c in sorted(r):
                pr = piv_rows.get(c)
                if pr is not None:
                    v = r[c]
                    for cc, vv in pr.items():
                        nv = r.get(cc, 0) - v * vv
                        nv = nv % p if p else _norm_q(nv)
                        if nv:
                            r[cc] = nv
                        else:
                            r.pop(cc, None)
                    changed = True
                    break
        return r

    for row in rows:
        r = reduce(dict(row))
        if not r:
            continue
        c0 = min(r)
        inv = field.inv(r[c0])
        r = {c: (v * inv % p if p else _norm_q(v * inv)) for c, v in r.items()}
        # keep existing pivot rows reduced with respect to the new pivot
        for pc, pr in piv_rows.items():
            v = pr.get(c0)
            if v:
                for cc, vv in r.items():
                    nv = pr.get(cc, 0) - v * vv
                    nv = nv % p if p else _norm_q(nv)
                    if nv:
                        pr[cc] = nv
                    else:
                        pr.pop(cc, None)
        piv_rows[c0] = r
    free = [c for c in range(ncols) if c not in piv_rows]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for pc, pr in piv_rows.items():
            x = pr.get(fc)
            if x:
                v[pc] = field.neg(x)
        basis.append(v)
    return basis
