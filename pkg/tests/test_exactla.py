from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sqbgg.exactla import (
    GF2,
    QQ,
    Field,
    MalformedInputError,
    Mat,
    NotAComplexError,
    homology_dim,
    image,
    kernel,
    nullspace_sparse,
    rank,
    solve,
)
from sqbgg.simplicial import SimplicialComplex, boundary_matrix

from strategies import fields, int_matrices, mat


# --- fields --------------------------------------------------------------------

def test_field_parse_and_names():
    assert Field.parse("q") == QQ
    assert Field.parse("fp:2") == GF2
    assert Field.parse("fp:7").name == "fp:7"
    for bad in ("fp:4", "fp:1", "fp:x", "r", "fp:-3"):
        with pytest.raises(MalformedInputError):
            Field.parse(bad)


def test_field_rejects_large_prime_bound():
    with pytest.raises(MalformedInputError):
        Field(2**31 + 11)  # prime, but beyond the bound


def test_field_elements():
    F7 = Field(7)
    assert F7(Fraction(1, 2)) == 4
    assert F7("3/2") == 5
    assert F7("5 mod 7") == 5
    assert QQ("3/2") == Fraction(3, 2)
    assert QQ("4/2") == 2 and isinstance(QQ("4/2"), int)
    with pytest.raises(MalformedInputError):
        F7(Fraction(1, 7))
    with pytest.raises(MalformedInputError):
        F7("1 mod 5")
    with pytest.raises(MalformedInputError):
        QQ("1/0")


def test_denominator_divisible_by_p_is_malformed():
    with pytest.raises(MalformedInputError):
        Mat.from_rows(Field(3), [[Fraction(1, 3)]])


# --- rank ----------------------------------------------------------------------

@pytest.mark.parametrize("field", [QQ, GF2, Field(5)])
def test_rank_examples(field):
    assert rank(Mat.zeros(field, 3, 3)) == 0
    assert rank(Mat.identity(field, 3)) == 3
    assert rank(Mat.from_rows(field, [[1, 2], [2, 4]])) == 1


def test_rank_empty_is_zero():
    assert rank(Mat(QQ, 0, 4)) == 0
    assert rank(Mat(QQ, 4, 0)) == 0


def test_rank_with_fractions():
    m = Mat.from_rows(QQ, [[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
    assert rank(m) == 1


@settings(max_examples=150, deadline=None)
@given(int_matrices(lo=-5, hi=5))
def test_rank_matches_sympy(mdata):
    rows, r, c = mdata
    m = mat(QQ, rows, r, c)
    expected = sympy.Matrix(r, c, [x for row in rows for x in row]).rank() if r and c else 0
    assert rank(m) == expected


@settings(max_examples=150, deadline=None)
@given(int_matrices(), fields)
def test_rank_bounds_and_transpose(mdata, field):
    rows, r, c = mdata
    m = mat(field, rows, r, c)
    k = rank(m)
    assert k <= min(r, c)
    assert rank(m.T()) == k


@settings(max_examples=150, deadline=None)
@given(int_matrices(lo=-4, hi=4), st.sampled_from([2, 3, 5, 7]))
def test_gfp_is_reduction_when_no_elementary_divisor_vanishes(mdata, p):
    rows, r, c = mdata
    if not (r and c):
        return
    M = sympy.Matrix(r, c, [x for row in rows for x in row])
    k = M.rank()
    # every nonzero elementary divisor coprime to p  <=>  some k-minor is nonzero mod p
    from sympy.matrices.normalforms import smith_normal_form

    snf = smith_normal_form(M, domain=sympy.ZZ)
    divisors = [snf[i, i] for i in range(min(r, c)) if snf[i, i] != 0]
    if any(d % p == 0 for d in divisors):
        assert rank(mat(Field(p), rows, r, c)) <= k
    else:
        assert rank(mat(Field(p), rows, r, c)) == k


# --- kernel, image, solve --------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(int_matrices(), fields)
def test_kernel_and_image(mdata, field):
    rows, r, c = mdata
    m = mat(field, rows, r, c)
    K = kernel(m)
    assert K.rows == c and K.cols == c - rank(m)
    assert (m @ K).is_zero()
    assert rank(K) == K.cols
    I = image(m)
    assert I.cols == rank(m) == rank(I)
    # the image columns are columns of m
    for j in range(I.cols):
        assert I.column(j) in [m.column(k) for k in range(c)]


@settings(max_examples=120, deadline=None)
@given(int_matrices(max_cols=4), fields, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_roundtrip(mdata, field, coeffs):
    rows, r, c = mdata
    a = mat(field, rows, r, c)
    x = Mat(field, c, 1, [[field(v)] for v in coeffs[:c]])
    b = a @ x
    sol = solve(a, b)
    assert sol is not None and a @ sol == b


def test_solve_inconsistent():
    a = Mat.from_rows(QQ, [[1], [1]])
    b = Mat.from_rows(QQ, [[1], [0]])
    assert solve(a, b) is None


def test_nullspace_sparse_matches_dense():
    rows = [{0: 1, 1: -1}, {1: 1, 2: -1}]
    basis = nullspace_sparse(rows, 4, QQ)
    assert len(basis) == 2
    dense = Mat.from_rows(QQ, [[1, -1, 0, 0], [0, 1, -1, 0]])
    for v in basis:
        assert not any(dense.apply(v))


# --- homology_dim -------------------------------------------------------------

def test_homology_dim_examples():
    k = 4
    assert homology_dim(Mat(QQ, k, 0), Mat(QQ, 0, k)) == k
    assert homology_dim(Mat(QQ, 2, 0), Mat.from_rows(QQ, [[1, 1]])) == 1


def test_homology_dim_triangle_boundary():
    # reduced chains: C_1 (3 edges) -> C_0 (3 vertices), C_2 = 0
    tri = SimplicialComplex.from_vertex_lists(3, [[1, 2], [1, 3], [2, 3]])
    d1 = boundary_matrix(tri, 2)          # edges -> vertices
    d2 = Mat(QQ, 3, 0)                    # no triangles
    assert homology_dim(d2, d1) == 1


def test_homology_dim_detects_non_complex():
    d_in = Mat.from_rows(QQ, [[1], [0]])
    d_out = Mat.from_rows(QQ, [[1, 0]])
    with pytest.raises(NotAComplexError):
        homology_dim(d_in, d_out)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6), fields)
def test_homology_dim_change_of_basis(k, seed, field):
    import random

    rng = random.Random(seed)
    # d_out: K^k -> K^a, d_in = kernel basis piece so that d_out d_in = 0
    a = rng.randint(0, 3)
    d_out = Mat(field, a, k, [[field(rng.randint(-2, 2)) for _ in range(k)] for _ in range(a)])
    Z = kernel(d_out)
    d_in = Z if Z.cols else Mat(field, k, 0)
    h = homology_dim(d_in, d_out)
    # invertible change of basis g of the middle space
    while True:
        g = Mat(field, k, k, [[field(rng.randint(-2, 2)) for _ in range(k)] for _ in range(k)])
        if rank(g) == k:
            break
    g_inv = solve(g, Mat.identity(field, k))
    assert homology_dim(g @ d_in, d_out @ g_inv) == h
