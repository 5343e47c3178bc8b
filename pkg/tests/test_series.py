import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nilpo.exactalg import GF, QQ
from nilpo.fox import alexander_poly
from nilpo.laurent import LaurentPoly, parse_laurent
from nilpo.series import (NotApplicable, almost_principal_check, b1_over_field, delta1_check, elem_order_check,
                          magnus, minimize_alexander, order)
from conftest import corpus_names, load

X = sympy.symbols("x1 x2")
s = sympy.symbols("s")


def magnus_oracle(f, D):
    """Total-degree truncation of f(1 + x) via a one-variable sympy series in a scaling parameter."""
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        expr += c * sympy.Mul(*[(1 + s * x) ** k for x, k in zip(X, e)])
    ser = sympy.series(expr, s, 0, D + 1).removeO()
    poly = sympy.Poly(sympy.expand(ser.subs(s, 1)), *X[: f.nvars])
    return {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms() if c}


def laurent_polys(n):
    return st.dictionaries(st.tuples(*[st.integers(-3, 3)] * n), st.integers(-4, 4), max_size=4).map(
        lambda d: LaurentPoly(n, d))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2).flatmap(laurent_polys))
def test_magnus_matches_sympy(f):
    assert magnus(f, QQ, 4).terms == magnus_oracle(f, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2).flatmap(lambda n: st.tuples(laurent_polys(n), laurent_polys(n))))
def test_magnus_is_a_ring_map(t):
    f, g = t
    for F in (QQ, GF(2), GF(3)):
        a, b = magnus(f, F, 5), magnus(g, F, 5)
        assert (magnus(f * g, F, 5)).terms == (a * b).terms
        assert (magnus(f + g, F, 5)).terms == (a + b).terms


@settings(max_examples=60)
@given(st.integers(1, 2).flatmap(laurent_polys))
def test_order_positive_iff_vanishes_at_one(f):
    assert (order(magnus(f, QQ, 3)) >= 1) == (f.at_one() == 0)


def test_magnus_examples():
    assert magnus(parse_laurent("t^-1", 1), QQ, 3).terms == {(0,): 1, (1,): -1, (2,): 1, (3,): -1}
    assert order(magnus(parse_laurent("t^2 - 2*t + 1", 1), QQ, 4)) == 2
    assert order(magnus(LaurentPoly(1), QQ, 4)) == math.inf
    # over F2, t^2 - 1 = (t - 1)^2 has order 2 while over Q it is 1
    f = parse_laurent("t^2 - 1", 1)
    assert order(magnus(f, QQ, 4)) == 1 and order(magnus(f, GF(2), 4)) == 2


@pytest.mark.parametrize("name, p, n", [
    ("z_x_zmod2", 0, 1), ("z_x_zmod2", 2, 2), ("z_x_zmod2", 3, 1),
    ("z_x_zmod6", 2, 2), ("z_x_zmod6", 3, 2), ("z_x_zmod6", 5, 1),
    ("klein", 2, 2), ("heisenberg", 3, 2), ("borromean", 0, 3),
])
def test_b1_over_field(name, p, n):
    assert b1_over_field(load(name), p) == n


def test_b1_over_field_rejects_composite():
    with pytest.raises(ValueError):
        b1_over_field(load("z"), 4)


@pytest.mark.parametrize("name", corpus_names())
@pytest.mark.parametrize("p", [0, 2, 3])
def test_minimal_alexander_contract(name, p):
    P = load(name)
    F = QQ if p == 0 else GF(p)
    MA = minimize_alexander(P, F)
    for row in MA.matrix:
        for e in row:
            assert order(e) >= 1
    # generators minus relations is preserved by the unit eliminations
    assert MA.gens - MA.rels == P.ngens - P.nrels
    assert MA.gens == b1_over_field(P, p)


@pytest.mark.parametrize("name", corpus_names())
@pytest.mark.parametrize("p", [0, 2, 3])
def test_elementary_ideal_orders(name, p):
    P = load(name)
    F = QQ if p == 0 else GF(p)
    for i in range(b1_over_field(P, p)):
        assert elem_order_check(P, F, i)


def test_elem_order_check_range():
    with pytest.raises(ValueError):
        elem_order_check(load("z2"), QQ, 2)


def test_delta1_on_borromean():
    P = load("borromean")
    assert delta1_check(P, QQ, 1)
    assert almost_principal_check(P, 1)
    assert order(magnus(alexander_poly(P), QQ, 6)) == 3
    with pytest.raises(NotApplicable):
        delta1_check(load("z2"), QQ, 1)


@pytest.mark.parametrize("name, expected", [
    ("borromean", True), ("trefoil", True), ("klein", True), ("z", True),
    ("heisenberg", False), ("z3", False), ("unipotent_rank2", False),
])
def test_almost_principal(name, expected):
    assert almost_principal_check(load(name), 1) is expected
