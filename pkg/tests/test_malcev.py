from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilpo.lie import GradedLie, bracket, graded_quotient_dims, hall_basis
from nilpo.malcev import (MalcevPresentation, NCPoly, NonLieResidue, bch, group_to_lie, lie_to_nc,
                          malcev_gr_dims, malcev_presentation, nc_exp, nc_log, nc_to_lie)
from nilpo.presentation import FreeWord
from conftest import corpus_names, load
from oracles import letter, t_add, t_bracket, t_exp, t_log, t_mul


def gens(B):
    return [GradedLie.generator(B, i) for i in range(B.m)]


def test_bch_degree_three_formula():
    B = hall_basis(2, 3)
    X, Y = gens(B)
    XY = bracket(X, Y)
    want = X + Y + XY * Fraction(1, 2) + bracket(X, XY) * Fraction(1, 12) + bracket(Y, bracket(Y, X)) * Fraction(1, 12)
    assert bch(X, Y) == want
    assert not bch(X, -X)


@pytest.mark.parametrize("D", [3, 4, 5])
def test_bch_matches_tensor_oracle(D):
    B = hall_basis(2, D)
    X, Y = gens(B)
    ref = t_log(t_mul(t_exp(letter(0), D), t_exp(letter(1), D), D), D)
    assert lie_to_nc(bch(X, Y)).terms == ref


def test_bch_formula_via_oracle():
    D = 3
    X, Y = letter(0), letter(1)
    XY = t_bracket(X, Y, D)
    formula = t_add(t_add(X, Y), {w: c / 2 for w, c in XY.items()})
    formula = t_add(formula, {w: c / 12 for w, c in t_bracket(X, XY, D).items()})
    formula = t_add(formula, {w: c / 12 for w, c in t_bracket(Y, t_bracket(Y, X, D), D).items()})
    assert t_log(t_mul(t_exp(X, D), t_exp(Y, D), D), D) == formula


signed = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=8)


@settings(max_examples=40, deadline=None)
@given(signed)
def test_group_to_lie_matches_oracle(letters):
    D = 4
    w = FreeWord.from_signed(letters)
    acc = {(): Fraction(1)}
    for a in w.signed():
        g = abs(a) - 1
        acc = t_mul(acc, t_exp({(g,): Fraction(1 if a > 0 else -1)}, D), D)
    x = group_to_lie(w, 3, D)
    assert lie_to_nc(x).terms == t_log(acc, D)
    # degree one part is the exponent vector
    assert x.vector(1) == w.exponent_vector(3)


def test_group_to_lie_examples():
    B = hall_basis(2, 3)
    X, Y = gens(B)
    x, y = FreeWord.gen(0), FreeWord.gen(1)
    comm = group_to_lie(x * y * x.inverse() * y.inverse(), 2, 3)
    assert comm.component(2) == bracket(X, Y)
    klein = group_to_lie(y * x * y.inverse() * x, 2, 2)
    assert klein.component(1) == X * 2
    assert klein.component(2) == bracket(Y, X)


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1)), st.integers(-3, 3), max_size=3),
       st.dictionaries(st.tuples(st.integers(0, 1)), st.integers(-3, 3), max_size=2))
def test_exp_log_inverse(quad, lin):
    a = NCPoly(2, 4, {**lin, **quad})
    assert nc_log(nc_exp(a)).terms == a.terms


def test_non_lie_residue_detected():
    with pytest.raises(NonLieResidue):
        nc_to_lie(NCPoly(2, 3, {(0, 1): 1}), hall_basis(2, 3))


@pytest.mark.parametrize("name", corpus_names())
def test_minimization_contract(name):
    P = load(name)
    MP = malcev_presentation(P, 4)
    assert MP.ngens - MP.nrels == P.ngens - P.nrels
    assert MP.ngens == P.abelian.b1
    for r in MP.relators:
        assert not r.component(1)


def test_minimization_examples():
    shape = {}
    for name in ("klein", "heisenberg", "trefoil_wirtinger"):
        MP = malcev_presentation(load(name), 5)
        shape[name] = (MP.ngens, MP.nrels)
    assert shape == {"klein": (1, 0), "heisenberg": (2, 2), "trefoil_wirtinger": (1, 1)}


@pytest.mark.parametrize("name, dims", [
    ("heisenberg", [2, 1, 0, 0]),
    ("z2", [2, 0, 0, 0]),
    ("klein", [1, 0, 0, 0]),
    ("z3", [3, 0, 0, 0]),
    ("free2", [2, 1, 2, 3]),
    ("free2_class2", [2, 1, 0, 0]),
    ("borromean", [3, 3, 6, 12]),
    ("trefoil", [1, 0, 0, 0]),
    ("hopf", [2, 0, 0, 0]),
])
def test_gr_dims(name, dims):
    assert malcev_gr_dims(malcev_presentation(load(name), 4)) == dims


@pytest.mark.parametrize("trees", [[(0, 1)], [(0, (0, 1))], [(0, (0, 1)), (1, (0, 1))], [(1, (0, (0, 1)))]])
def test_homogeneous_presentations_agree_with_quotient_dims(trees):
    D = 5
    B = hall_basis(2, D)
    rels = tuple(GradedLie.from_tree(B, t) for t in trees)
    assert malcev_gr_dims(MalcevPresentation(2, D, rels)) == graded_quotient_dims(rels, D)


@pytest.mark.parametrize("name", ["heisenberg", "z2"])
def test_lowest_degree_parts_agree_with_quotient_dims(name):
    D = 5
    MP = malcev_presentation(load(name), D)
    lowest = [r.component(r.min_degree()) for r in MP.relators if r]
    assert malcev_gr_dims(MP) == graded_quotient_dims(lowest, D, m=MP.ngens)
