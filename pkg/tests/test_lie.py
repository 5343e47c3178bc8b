from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilpo.lie import (GradedLie, bracket, dims_from_target, graded_quotient_dims, hall_basis, inert_divisibility,
                       mobius, pbw_product, pbw_series_check, witt)
from oracles import enveloping_dims, lie_dims_from_enveloping, lyndon_count


def test_mobius_and_witt():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert [witt(2, k) for k in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]
    assert [witt(3, k) for k in range(1, 6)] == [3, 3, 8, 18, 48]


@pytest.mark.parametrize("m, D", [(1, 5), (2, 8), (3, 6), (4, 4)])
def test_hall_sizes_match_lyndon_enumeration(m, D):
    assert hall_basis(m, D).sizes() == [lyndon_count(m, k) for k in range(1, D + 1)]


def tensor_commutator(u, v):
    out = {}
    for w1, c1 in u.items():
        for w2, c2 in v.items():
            out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
            out[w2 + w1] = out.get(w2 + w1, 0) - c1 * c2
    return {w: c for w, c in out.items() if c}


def expand(x):
    out = {}
    for k, c in x.coeffs.items():
        for w, d in x.basis.expand(k).items():
            out[w] = out.get(w, 0) + c * d
    return {w: c for w, c in out.items() if c}


def test_bracket_agrees_with_tensor_commutator():
    B = hall_basis(2, 6)
    for a in range(len(B)):
        for b in range(len(B)):
            if B.degree[a] + B.degree[b] > 6:
                continue
            ga, gb = GradedLie.generator(B, a), GradedLie.generator(B, b)
            assert expand(bracket(ga, gb)) == tensor_commutator(expand(ga), expand(gb))


def lie_elems(B, maxdeg):
    idx = [i for i in range(len(B)) if B.degree[i] <= maxdeg]
    return st.dictionaries(st.sampled_from(idx), st.integers(-3, 3), max_size=3).map(lambda d: GradedLie(B, d))


B3 = hall_basis(3, 6)


@settings(max_examples=60, deadline=None)
@given(lie_elems(B3, 2), lie_elems(B3, 2), lie_elems(B3, 2))
def test_jacobi_and_antisymmetry(a, b, c):
    assert bracket(a, b) == -bracket(b, a)
    jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    assert not jac


def test_bracket_examples():
    B = hall_basis(2, 4)
    X, Y = GradedLie.generator(B, 0), GradedLie.generator(B, 1)
    assert str(bracket(X, Y)) == "-1*[Y,X]"
    assert str(GradedLie.from_tree(B, (0, (0, 1)))) == "[[Y,X],X]"
    assert not bracket(X, X)
    with pytest.raises(OverflowError):
        bracket(GradedLie.from_tree(B, (0, (0, 1))), bracket(X, Y))


def to_tensor(x):
    return {w: Fraction(c) for w, c in expand(x).items()}


@pytest.mark.parametrize("tree, D", [
    ((0, 1), 6),
    ((0, (0, 1)), 6),
    ((1, (0, (0, 1))), 6),
])
def test_quotient_dims_match_enveloping_oracle(tree, D):
    B = hall_basis(2, D)
    r = GradedLie.from_tree(B, tree)
    ours = graded_quotient_dims([r], D)
    ref = lie_dims_from_enveloping(enveloping_dims([to_tensor(r)], 2, D), D)
    assert ours == ref


def test_quotient_dims_examples():
    B = hall_basis(2, 6)
    assert graded_quotient_dims([GradedLie.from_tree(B, (0, 1))], 6) == [2, 0, 0, 0, 0, 0]
    dims = graded_quotient_dims([GradedLie.from_tree(B, (0, (0, 1)))], 6)
    assert dims == [2, 1, 1, 1, 2, 2]
    assert pbw_series_check(dims, [1, -2, 0, 1])
    assert graded_quotient_dims([], 5, m=2) == [witt(2, k) for k in range(1, 6)]
    with pytest.raises(ValueError):
        graded_quotient_dims([GradedLie.generator(B, 0)], 4)


def test_pbw_free_and_abelian():
    assert pbw_product([witt(2, k) for k in range(1, 9)]) == [1, -2] + [0] * 7
    assert pbw_product([2, 0, 0, 0, 0, 0]) == [1, -2, 1, 0, 0, 0, 0]
    assert dims_from_target([1, -2, 0, 1], 2, 6) == [2, 1, 1, 1, 2, 2]


@settings(max_examples=40)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=7))
def test_dims_from_target_inverts_pbw(dims):
    assert dims_from_target(pbw_product(dims), dims[0], len(dims)) == dims


def test_inert_divisibility():
    assert [d for d in range(2, 11) if inert_divisibility(d)] == [2]


def ad_x_power(d):
    tree = 1
    for _ in range(d - 1):
        tree = (0, tree)
    return tree


@pytest.mark.parametrize("d", range(2, 7))
def test_one_relator_series(d):
    B = hall_basis(2, 6)
    dims = graded_quotient_dims([GradedLie.from_tree(B, ad_x_power(d))], 6)
    assert pbw_series_check(dims, [1, -2] + [0] * (d - 2) + [1])
    if d == 2:
        assert dims[1:] == [0] * 5
    else:
        assert dims[5] > 0
