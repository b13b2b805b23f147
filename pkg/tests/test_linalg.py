from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hhlie.errors import NotSquare, SubspaceNotContained
from hhlie.fields import GF, QQ
from hhlie.linalg import (
    Coordinates, Matrix, Subspace, char_poly, eigenvalues_in_field, kernel, poly_eval_matrix, quotient_basis,
    rank, roots_in_field, rref, sparse_kernel, unit_vector,
)


def small_matrices(max_rows=5, max_cols=5, lo=-4, hi=4):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def square_matrices(max_n=5, lo=-3, hi=3):
    return st.integers(1, max_n).flatmap(lambda n: st.lists(
        st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n))


FIELDS = st.sampled_from([QQ, GF(2), GF(3), GF(7)])


# ---------------------------------------------------------------- rref / kernel

def test_rref_identity_and_zero():
    I = Matrix.identity(QQ, 2)
    assert rref(I) == (I, [0, 1])
    Z = Matrix.zero(QQ, 3)
    assert rref(Z) == (Z, [])


def test_rref_example():
    R, piv = rref(Matrix(QQ, [[2, 4], [1, 2]]))
    assert R == Matrix(QQ, [[1, 2], [0, 0]])
    assert piv == [0]


@given(small_matrices())
def test_rref_matches_sympy(rows):
    R, piv = rref(Matrix(QQ, rows))
    S, spiv = sympy.Matrix(rows).rref()
    assert list(piv) == list(spiv)
    assert [[Fraction(int(x.p), int(x.q)) for x in S.row(i)] for i in range(S.rows)] == [list(r) for r in R.rows]


@given(small_matrices(), FIELDS)
def test_rref_idempotent(rows, F):
    R, _ = rref(Matrix(F, rows))
    assert rref(R)[0] == R


@given(small_matrices(), FIELDS)
def test_rank_nullity(rows, F):
    m = Matrix(F, rows)
    K = kernel(m)
    assert rank(m) + K.dim == m.ncols
    for v in K.basis:
        assert not any(m.apply(v))


def test_kernel_examples():
    assert kernel(Matrix.identity(QQ, 3)).dim == 0
    assert kernel(Matrix.zero(QQ, 2, 3)).dim == 3
    K = kernel(Matrix(GF(3), [[1, 1]]))
    # brute force over F_3^2
    F = GF(3)
    sols = [(F(a), F(b)) for a in range(3) for b in range(3) if (a + b) % 3 == 0]
    assert K.dim == 1
    assert all(K.contains(v) for v in sols)
    assert K.basis == ((F(1), F(2)),)


@given(small_matrices(6, 6, -2, 2), FIELDS)
def test_sparse_kernel_agrees_with_dense(rows, F):
    m = Matrix(F, rows)
    sparse = [{j: a for j, a in enumerate(r) if a} for r in m.rows]
    assert sparse_kernel(F, sparse, m.ncols) == kernel(m)


# ---------------------------------------------------------------- subspaces

@given(small_matrices(4, 5), small_matrices(4, 5), FIELDS)
def test_dimension_formula_for_sum_and_intersection(u, v, F):
    n = min(len(u[0]), len(v[0]))
    U = Subspace(F, n, [r[:n] for r in u])
    V = Subspace(F, n, [r[:n] for r in v])
    W = U.intersect(V)
    assert (U + V).dim + W.dim == U.dim + V.dim
    assert W <= U and W <= V


def test_subspace_rref_invariant():
    S = Subspace(QQ, 3, [(2, 4, 6), (1, 1, 1)])
    assert list(S.pivots) == sorted(S.pivots)
    for row, c in zip(S.basis, S.pivots):
        assert row[c] == 1


def test_quotient_examples():
    full = Subspace.full(QQ, 3)
    q = quotient_basis(full, full)
    assert q.dim == 0
    q = quotient_basis(full, Subspace.zero(QQ, 3))
    assert q.complement == full.basis
    assert q.matrix() == Matrix.identity(QQ, 3)
    q = quotient_basis(full, Subspace(QQ, 3, [(1, 0, 0)]))
    assert q.complement == (unit_vector(QQ, 3, 1), unit_vector(QQ, 3, 2))
    assert q.project((5, 7, 9)) == (7, 9)
    for i, c in enumerate(q.complement):
        assert q.project(c) == unit_vector(QQ, 2, i)


def test_quotient_not_contained():
    with pytest.raises(SubspaceNotContained):
        quotient_basis(Subspace(QQ, 2, [(1, 0)]), Subspace(QQ, 2, [(0, 1)]))


@given(small_matrices(4, 5), st.lists(st.integers(-3, 3), min_size=4, max_size=4), FIELDS)
def test_quotient_projection_properties(rows, coeffs, F):
    n = len(rows[0])
    amb = Subspace.full(F, n)
    sub = Subspace(F, n, rows)
    q = quotient_basis(amb, sub)
    assert q.dim + sub.dim == n
    for v in sub.basis:
        assert not any(q.project(v))
    for i, c in enumerate(q.complement):
        assert q.project(c) == unit_vector(F, q.dim, i)
    if q.dim:
        x = tuple(F(a) for a in (coeffs * 2)[:q.dim])
        assert q.project(q.lift(x)) == x


def test_coordinates():
    C = Coordinates(QQ, 3, [(1, 1, 0), (0, 1, 1)])
    assert C((1, 3, 2)) == (1, 2)
    with pytest.raises(SubspaceNotContained):
        C((1, 0, 0))
    with pytest.raises(ValueError):
        Coordinates(QQ, 2, [(1, 1), (2, 2)])


# ---------------------------------------------------------------- characteristic polynomial

def test_char_poly_examples():
    assert char_poly(Matrix.identity(QQ, 2)) == [1, -2, 1]
    assert char_poly(Matrix(QQ, [[2, 0], [0, -2]])) == [-4, 0, 1]
    # companion matrix of x^3 + x + 1 over F_2
    comp = Matrix(GF(2), [[0, 0, 1], [1, 0, 1], [0, 1, 0]])
    assert char_poly(comp) == [1, 1, 0, 1]


def test_char_poly_not_square():
    with pytest.raises(NotSquare):
        char_poly(Matrix(QQ, [[1, 2]]))


@given(square_matrices())
def test_char_poly_matches_sympy(rows):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.Matrix(rows).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert char_poly(Matrix(QQ, rows)) == [Fraction(int(c)) for c in expected]


@given(square_matrices(), FIELDS)
def test_cayley_hamilton(rows, F):
    m = Matrix(F, rows)
    assert poly_eval_matrix(char_poly(m), m).is_zero()


@given(square_matrices(4), st.sampled_from([2, 3, 5, 7]))
def test_char_poly_mod_p_is_reduction(rows, p):
    assert char_poly(Matrix(GF(p), rows)) == [GF(p)(c) for c in char_poly(Matrix(QQ, rows))]


# ---------------------------------------------------------------- roots and eigenvalues

def test_roots_rational():
    # (x - 1/2)(x + 3) x = x^3 + 5/2 x^2 - 3/2 x
    assert roots_in_field([0, Fraction(-3, 2), Fraction(5, 2), 1], QQ) == [-3, 0, Fraction(1, 2)]
    assert roots_in_field([1, 0, 1], QQ) == []


def test_eigen_examples():
    ev = eigenvalues_in_field(Matrix(QQ, [[0, 0, 0], [0, 2, 0], [0, 0, -2]]))
    assert [lam for lam, _ in ev] == [-2, 0, 2]
    assert [vecs for _, vecs in ev] == [((0, 0, 1),), ((1, 0, 0),), ((0, 1, 0),)]
    assert eigenvalues_in_field(Matrix(QQ, [[0, -1], [1, 0]])) == []


def test_eigen_witt_ad_f0():
    from hhlie.generators import gen_witt_lie
    W = gen_witt_lie(5)
    ev = eigenvalues_in_field(W.ad(W.basis_vector(1)))
    assert sorted(int(lam) for lam, _ in ev) == [0, 1, 2, 3, 4]


@given(square_matrices(4), FIELDS)
def test_eigenvectors_are_eigenvectors(rows, F):
    m = Matrix(F, rows)
    for lam, vecs in eigenvalues_in_field(m):
        for v in vecs:
            assert m.apply(v) == tuple(lam * a for a in v)


# ---------------------------------------------------------------- matrix arithmetic

@given(square_matrices(3), square_matrices(3), FIELDS)
def test_matmul_matches_sympy_over_q(a, b, F):
    n = min(len(a), len(b))
    a = [r[:n] for r in a[:n]]
    b = [r[:n] for r in b[:n]]
    got = Matrix(QQ, a) @ Matrix(QQ, b)
    assert [list(map(int, r)) for r in got.rows] == (sympy.Matrix(a) * sympy.Matrix(b)).tolist()
    assert (Matrix(F, a) @ Matrix(F, b)).transpose() == Matrix(F, b).transpose() @ Matrix(F, a).transpose()


def test_matrix_power_and_trace():
    m = Matrix(QQ, [[1, 1], [0, 1]])
    assert m ** 5 == Matrix(QQ, [[1, 5], [0, 1]])
    assert m.trace() == 2
    with pytest.raises(NotSquare):
        Matrix(QQ, [[1, 2]]) ** 2
