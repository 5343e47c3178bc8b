from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nilpo.exactalg import (GF, QQ, CycloNum, ModP, QCyclo, bareiss_det, bareiss_rank, cyclo_inverse,
                            cyclotomic_polynomial, euler_phi, mat_mul, rank, rank_kernel,
                            smith_normal_form, zeta)
from oracles import determinantal_invariants


def nonzero_diag(A):
    return [d for d in smith_normal_form(A).diagonal if d]


@pytest.mark.parametrize("A, diag", [
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
    ([[1, 1], [1, -1]], [1, 2]),
    ([[0, 0], [0, 0]], [0, 0]),
    ([[6]], [6]),
    ([[-3, 0], [0, 0]], [3, 0]),
    ([[2, 0], [0, 3]], [1, 6]),
])
def test_snf_examples(A, diag):
    assert smith_normal_form(A).diagonal == diag


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-100, 100), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_snf_recombines(A):
    snf = smith_normal_form(A)
    assert [list(r) for r in mat_mul(mat_mul(snf.U, snf.D), snf.V)] == A
    assert [list(r) for r in mat_mul(mat_mul(snf.P, A), snf.Q)] == [list(r) for r in snf.D]
    assert abs(bareiss_det(snf.U)) == 1 and abs(bareiss_det(snf.V)) == 1
    diag = snf.diagonal
    for i, d in enumerate(diag):
        assert d >= 0
        if i + 1 < len(diag) and diag[i + 1]:
            assert diag[i + 1] % d == 0 if d else False
    # off-diagonal entries vanish
    for i, row in enumerate(snf.D):
        for j, x in enumerate(row):
            assert i == j or x == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda r: st.lists(st.lists(st.integers(-12, 12), min_size=4, max_size=4), min_size=r, max_size=r)))
def test_snf_matches_determinantal_divisors(A):
    assert nonzero_diag(A) == determinantal_invariants(A)


@pytest.mark.parametrize("n", list(range(1, 31)) + [36, 60, 105])
def test_cyclotomic_matches_sympy(n):
    x = sympy.symbols("x")
    ref = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in ref]
    assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


def test_zeta_relations():
    assert zeta(4) * zeta(4) == CycloNum(4, [-1])
    assert zeta(6) ** 6 == CycloNum(6, [1])
    assert zeta(3) + zeta(3, 2) == CycloNum(3, [-1])
    assert zeta(1) == CycloNum(1, [1])
    assert sum((zeta(12, k) for k in range(12)), CycloNum(12, [0])) == CycloNum(12, [0])


levels = st.sampled_from([1, 2, 3, 4, 6, 12])


@st.composite
def cyclo_pair(draw):
    n = draw(levels)
    frac = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 7))
    coeffs = st.lists(frac, min_size=1, max_size=n)
    return CycloNum(n, draw(coeffs)), CycloNum(n, draw(coeffs)), CycloNum(n, draw(coeffs))


@settings(max_examples=80, deadline=None)
@given(cyclo_pair())
def test_cyclo_field_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == CycloNum(a.level, [0])
    if a:
        assert a * cyclo_inverse(a) == CycloNum(a.level, [1])
        assert (b / a) * a == b


def test_cyclo_inverse_examples():
    assert cyclo_inverse(zeta(4)) == CycloNum(4, [0, -1])
    one_minus = CycloNum(3, [1, -1])
    inv = cyclo_inverse(one_minus)
    assert inv * one_minus == CycloNum(3, [1])
    with pytest.raises(ZeroDivisionError):
        cyclo_inverse(CycloNum(5, [0]))


def test_fields():
    assert GF(5)(3) * GF(5)(2) == ModP(1, 5)
    assert GF(7)(Fraction(1, 2)) == ModP(4, 7)
    assert QQ.characteristic == 0 and GF(3).characteristic == 3
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        QCyclo(0)


def test_rank_kernel_examples():
    r, K = rank_kernel([[1, 2, 3], [2, 4, 6]], QQ)
    assert r == 1 and len(K) == 2
    for v in K:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0
    assert rank([[1, 1], [1, -1]], GF(2)) == 1
    assert rank([[1, 1], [1, -1]], QQ) == 2
    i = zeta(4)
    assert rank([[CycloNum(4, [1]), i], [i, CycloNum(4, [-1])]], QCyclo(4)) == 1
    assert rank_kernel([], QQ, ncols=3) == (0, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_rank_matches_bareiss_and_sympy(A):
    r = rank(A, QQ)
    assert r == bareiss_rank(A) == sympy.Matrix(A).rank()
    _, K = rank_kernel(A, QQ)
    assert len(K) == len(A[0]) - r
    for v in K:
        assert all(sum(Fraction(a) * x for a, x in zip(row, v)) == 0 for row in A)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_det_matches_sympy(A):
    assert bareiss_det(A) == sympy.Matrix(A).det()
