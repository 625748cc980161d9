from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from toricfano.exact import (
    ONE,
    S,
    T,
    ZERO,
    BinaryForm,
    bf_gcd_set,
    bf_resultant,
    det,
    elementary_divisors,
    format_rational,
    int_kernel,
    matmul,
    parse_rational,
    rat_kernel_dim,
    rat_rank,
    rat_solve,
    snf,
)

small = st.integers(-9, 9)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def sympy_divisors(A):
    M = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
    return [abs(int(M[i, i])) for i in range(min(M.shape)) if M[i, i] != 0]


def test_snf_small_example():
    res = snf([[2, 4], [6, 8]])
    assert res.diagonal == [2, 4]
    assert matmul(matmul(res.U, [[2, 4], [6, 8]]), res.V) == [list(r) for r in res.D]


def test_int_kernel_example():
    assert int_kernel([[0, 1, 1], [1, 3, 4]]) == [[-1, -1, 1]]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_reconstructs_and_matches_sympy(A):
    res = snf(A)
    assert matmul(matmul(res.U, A), res.V) == [list(r) for r in res.D]
    assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
    d = [x for x in res.diagonal if x]
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert d == sympy_divisors(A)
    assert elementary_divisors(A) == d


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_and_kernel_match_sympy(A):
    M = sympy.Matrix(A)
    assert rat_rank(A) == M.rank()
    K = int_kernel(A)
    assert len(K) == len(A[0]) - M.rank() == rat_kernel_dim(A)
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    if K:  # saturated: the kernel basis extends to a unimodular matrix
        assert elementary_divisors([list(r) for r in zip(*K)]) == [1] * len(K)


def test_rat_solve():
    assert rat_solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert rat_solve([[1, 2], [2, 4]], [1, 2]) is None


def test_binary_form_basics():
    f = BinaryForm(2, [1, 2, 3])  # t^2 + 2st + 3s^2
    assert f(1, 0) == 3 and f(0, 1) == 1
    assert (S * T).coeffs == (0, 1, 0)
    assert (f - f).is_zero
    assert ZERO.degree is None
    with pytest.raises(ValueError):
        S + BinaryForm(2, [1, 0, 0])
    ds, dt = f.partials()
    assert ds == BinaryForm(1, [2, 6]) and dt == BinaryForm(1, [2, 2])
    with pytest.raises(AttributeError):
        f.degree = 3


def test_gcd_examples():
    assert bf_gcd_set([S, T]) == ONE
    assert bf_gcd_set([S * S, S * T]) == S
    lin = S + T
    assert bf_gcd_set([lin * S, lin * T * T, ZERO]) == lin
    with pytest.raises(ValueError):
        bf_gcd_set([ZERO])


def test_resultant_examples():
    assert abs(bf_resultant(S, T)) == 1
    assert bf_resultant(S * T, S + T) != 0
    assert bf_resultant(S * T, S) == 0


forms = st.integers(0, 4).flatmap(
    lambda d: st.lists(st.integers(-6, 6), min_size=d + 1, max_size=d + 1).map(lambda c: BinaryForm(d, c)))


def to_sympy(f):
    s, t = sympy.symbols("s t")
    return sum(sympy.Rational(c.numerator, c.denominator) * s**i * t**(f.degree - i)
               for i, c in enumerate(f.coeffs))


@settings(max_examples=200, deadline=None)
@given(forms, forms, forms)
def test_gcd_and_resultant_against_sympy(f, g, h):
    s, t = sympy.symbols("s t")
    if f.is_zero or g.is_zero or h.is_zero:
        return
    fh, gh = f * h, g * h
    ours = bf_gcd_set([fh, gh])
    theirs = sympy.Poly(sympy.gcd(to_sympy(fh), to_sympy(gh)), s, t)
    assert ours.degree == theirs.total_degree()
    assert sympy.div(theirs, sympy.Poly(to_sympy(ours), s, t))[1].is_zero
    if f.degree + g.degree == 0:
        return
    res = bf_resultant(f, g)
    assert (res == 0) == (bf_gcd_set([f, g]).degree > 0)
    if f.coeffs[-1] and g.coeffs[-1]:  # dehomogenizing at t = 1 keeps both degrees
        sres = sympy.resultant(to_sympy(f).subs(t, 1), to_sympy(g).subs(t, 1), s)
        assert abs(res) == abs(sres)


@settings(max_examples=100, deadline=None)
@given(forms, forms)
def test_product_and_composition(f, g):
    assert (f * g)(2, 3) == f(2, 3) * g(2, 3)
    if not f.is_zero:
        assert f.compose(S, T) == f


@pytest.mark.parametrize("text,value", [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), ("0", Fraction(0))])
def test_rational_text_round_trip(text, value):
    assert parse_rational(text) == value
    assert format_rational(value) == text
