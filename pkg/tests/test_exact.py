from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from symtoric.exact import (Gaussian, I, Matrix, as_rational, as_scalar, column_echelon, det,
                            dual_lattice_pairing, hermite_normal_form, integer_kernel,
                            integer_solution, inverse, is_primitive, nullspace, rank,
                            rank_kernel, saturate, smith_normal_form, solve)


def ints(lo=-6, hi=6):
    return st.integers(lo, hi)


def int_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(ints(), min_size=c, max_size=c), min_size=r, max_size=r)))


def rat_matrices(max_rows=10, max_cols=10):
    frac = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(frac, min_size=c, max_size=c), min_size=r, max_size=r)))


# scalars

def test_as_rational_rejects_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(-4) == Fraction(-4)


def test_gaussian_arithmetic():
    z = Gaussian(1, 2)
    assert z * z.conjugate() == 5
    assert (z * z.conjugate()).im == 0
    assert I * I == -1
    assert z / z == 1
    assert 1 / I == -I
    assert z.conjugate().conjugate() == z
    assert Gaussian(3, 0) == Fraction(3)
    assert hash(Gaussian(3, 0)) == hash(Fraction(3))
    assert as_scalar({"re": "1/2", "im": "0"}) == Fraction(1, 2)


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50),
       st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_gaussian_field_laws(a, b, c, d):
    x, y = Gaussian(a, b), Gaussian(c, d)
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x * x.conjugate()).im == 0
    if y:
        assert (x / y) * y == x


@given(st.fractions(max_denominator=30), st.fractions(max_denominator=30))
def test_rational_sum_two_ways(p, q):
    direct = p + q
    by_hand = Fraction(p.numerator * q.denominator + q.numerator * p.denominator,
                       p.denominator * q.denominator)
    assert direct == by_hand
    assert (direct.numerator, direct.denominator) == (by_hand.numerator, by_hand.denominator)


# field linear algebra

def test_rank_kernel_examples():
    r, k = rank_kernel(Matrix.identity(2))
    assert r == 2 and k.cols == 0
    r, k = rank_kernel(Matrix([[1, 1], [2, 2]]))
    assert r == 1
    assert column_echelon(k) == column_echelon(Matrix([[1], [-1]]))
    r, k = rank_kernel(Matrix.zeros(3, 3))
    assert r == 0 and column_echelon(k) == Matrix.identity(3)


@settings(max_examples=80, deadline=None)
@given(rat_matrices())
def test_rank_nullity_against_sympy(rows):
    m = Matrix(rows)
    r, k = rank_kernel(m)
    assert r + k.cols == m.cols
    assert r == sympy.Matrix(rows).rank()
    for j in range(k.cols):
        assert not any(m.apply(k.col(j)))


@settings(max_examples=50, deadline=None)
@given(rat_matrices(6, 6))
def test_solve_and_inverse(rows):
    m = Matrix(rows)
    b = m.apply([Fraction(j + 1) for j in range(m.cols)])
    x = solve(m, b)
    assert x is not None and m.apply(x) == b
    if m.is_square() and rank(m) == m.rows:
        assert m @ inverse(m) == Matrix.identity(m.rows)
        assert det(m) == sympy.Matrix(rows).det()


def test_complex_nullspace():
    m = Matrix([[1, I], [I, -1]])
    k = nullspace(m)
    assert k.cols == 1
    assert not any(m.apply(k.col(0)))


# integer linear algebra

def test_hnf_examples():
    h, u = hermite_normal_form(Matrix.identity(3))
    assert h == Matrix.identity(3) and u == Matrix.identity(3)
    h, u = hermite_normal_form(Matrix([[2, 4], [1, 3]]))
    # same row lattice as [[1,3],[0,2]], written in the reduced canonical form
    assert h == Matrix([[1, 1], [0, 2]])
    assert u @ Matrix([[2, 4], [1, 3]]) == h
    h, _ = hermite_normal_form(Matrix([[0, 0]]))
    assert h == Matrix([[0, 0]])


@settings(max_examples=80, deadline=None)
@given(int_matrices())
def test_hnf_properties(rows):
    m = Matrix(rows)
    h, u = hermite_normal_form(m)
    assert u @ m == h
    assert abs(det(u)) == 1
    # canonical: idempotent, pivots positive, entries above pivots reduced
    assert hermite_normal_form(h)[0] == h
    last = -1
    for i in range(h.rows):
        row = h.row(i)
        if not any(row):
            assert all(not any(h.row(j)) for j in range(i, h.rows))
            break
        p = next(j for j, x in enumerate(row) if x)
        assert p > last and row[p] > 0
        for k in range(i):
            assert 0 <= h[k, p] < row[p]
        last = p


def test_snf_examples():
    assert smith_normal_form(Matrix([[1, 0, -1], [0, 1, -1]]))[0] == (1, 1)
    assert smith_normal_form(Matrix([[2]]))[0] == (2,)
    assert smith_normal_form(Matrix([[2, 0], [0, 3]]))[0] == (1, 6)


@settings(max_examples=80, deadline=None)
@given(int_matrices())
def test_snf_properties(rows):
    m = Matrix(rows)
    d, u, v = smith_normal_form(m)
    prod = u @ m @ v
    for i in range(prod.rows):
        for j in range(prod.cols):
            assert prod[i, j] == (d[i] if i == j else 0)
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    nz = [x for x in d if x]
    assert all(x >= 0 for x in d)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d[len(nz):] == (0,) * (len(d) - len(nz))
    # idempotent
    diag = Matrix([[d[i] if i == j else 0 for j in range(m.cols)] for i in range(m.rows)], m.cols)
    assert smith_normal_form(diag)[0] == d
    # oracle: sympy's invariant factors
    from sympy.matrices.normalforms import invariant_factors
    ref = [abs(int(x)) for x in invariant_factors(sympy.Matrix(rows)) if x]
    assert nz == ref


@settings(max_examples=60, deadline=None)
@given(int_matrices(4, 6))
def test_integer_kernel_is_saturated_kernel(rows):
    m = Matrix(rows)
    k = integer_kernel(m)
    assert k.rows == m.cols - rank(m)
    for r in k.row_list():
        assert not any(m.apply(r))
    assert is_primitive(k)


def test_integer_solution():
    a = Matrix([[2, 0], [0, 3]])
    assert integer_solution(a, [4, 9]) == (2, 3)
    assert integer_solution(a, [1, 0]) is None
    assert integer_solution(a, [Fraction(1, 2), 0]) is None


def test_saturate_and_pairing():
    assert saturate(Matrix([[2, 0]])) == Matrix([[1, 0]])
    assert dual_lattice_pairing(Matrix([[1, 1]]), [0, -3]) == (Fraction(-3),)
    pair = dual_lattice_pairing(Matrix([[1, 1]]), [0, Fraction(-1, 2)])
    assert pair == (Fraction(-1, 2),) and pair[0].denominator != 1
    assert dual_lattice_pairing(Matrix([[1, 1], [0, 1]]), [0, 0]) == (0, 0)
