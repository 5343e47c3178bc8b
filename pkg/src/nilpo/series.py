"""Truncated power series, Magnus expansion and mod-p valuation bounds.

The Magnus map sends t_i to 1 + x_i.  Orders of series are measured in
the maximal ideal m = (x_1, ..., x_n) of the completed ring k[[x]].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Mapping

from .exactalg import QQ, FieldTag, is_prime
from .fox import alexander_matrix, alexander_poly, elementary_ideal_gens
from .groebner import MPoly, buchberger, normal_form
from .laurent import LaurentPoly
from .presentation import GroupPresentation

Exp = tuple[int, ...]


class NotApplicable(Exception):
    """The hypothesis of a check does not hold for this input."""


class TruncSeries:
    """Power series in ``nvars`` variables, kept up to total degree ``D``."""

    __slots__ = ("nvars", "D", "field", "terms")

    def __init__(self, nvars: int, D: int, field: FieldTag, terms: Mapping[Exp, object] | None = None):
        self.nvars, self.D, self.field = nvars, D, field
        out = {}
        for e, c in (terms or {}).items():
            if sum(e) > D:
                continue
            c = field(c)
            if c:
                out[tuple(e)] = c
        self.terms = out

    @classmethod
    def _raw(cls, nvars, D, field, terms):
        s = cls.__new__(cls)
        s.nvars, s.D, s.field, s.terms = nvars, D, field, terms
        return s

    @classmethod
    def const(cls, nvars: int, D: int, field: FieldTag, c) -> TruncSeries:
        return cls(nvars, D, field, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, D: int, field: FieldTag, i: int) -> TruncSeries:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, D, field, {tuple(e): 1})

    def _lift(self, other) -> TruncSeries:
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries.const(self.nvars, self.D, self.field, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out[e] + c if e in out else c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TruncSeries._raw(self.nvars, self.D, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(self.nvars, self.D, self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        D = self.D
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > D:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out[e] + c1 * c2 if e in out else c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return TruncSeries._raw(self.nvars, self.D, self.field, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._lift(other)
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"TruncSeries({self.nvars}, D={self.D}, {self.field}, {self.terms})"

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def inverse(self) -> TruncSeries:
        """Inverse of a unit: c^-1 * sum_j (-h)^j where self = c(1 + h)."""
        c = self.constant_term()
        if not c:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        cinv = self.field.one / c
        h = self * cinv - 1
        out = TruncSeries.const(self.nvars, self.D, self.field, 1)
        power = out
        for _ in range(self.D):
            power = power * (-h)
            out = out + power
        return out * cinv


def order(s: TruncSeries) -> int | float:
    """Least total degree present; ``math.inf`` when zero up to the cap.

    An infinite answer only means the order is at least ``s.D + 1``.
    """
    if not s.terms:
        return math.inf
    return min(sum(e) for e in s.terms)


def _binomial_series(e: int, D: int) -> list[int]:
    """Coefficients of (1 + x)^e up to x^D, e any integer."""
    out = [1]
    c = 1
    for j in range(1, D + 1):
        c = c * (e - j + 1) // j  # exact: equals j * C(e, j)
        out.append(c)
    return out


def magnus(f: LaurentPoly, field: FieldTag, D: int) -> TruncSeries:
    """Image of ``f`` under t_i -> 1 + x_i in k[[x]] truncated at degree D."""
    if D < 0:
        raise ValueError("D must be >= 0")
    n = f.nvars
    cache: dict[tuple[int, int], list[int]] = {}
    out = TruncSeries(n, D, field)
    for e, c in f.terms.items():
        term = TruncSeries.const(n, D, field, c)
        for i, ei in enumerate(e):
            if ei == 0:
                continue
            coeffs = cache.get((ei, D))
            if coeffs is None:
                coeffs = cache[(ei, D)] = _binomial_series(ei, D)
            uni = {}
            for j, cj in enumerate(coeffs):
                v = [0] * n
                v[i] = j
                uni[tuple(v)] = cj
            term = term * TruncSeries(n, D, field, uni)
        out = out + term
    return out


def b1_over_field(P: GroupPresentation, p: int) -> int:
    """dim_k H^1(G; k) for k of characteristic p (0 or a prime)."""
    if p != 0 and not is_prime(p):
        raise ValueError(f"{p} is not prime")
    A = P.abelian
    if p == 0:
        return A.b1
    return A.b1 + sum(1 for d in A.torsion if d % p == 0)


def default_cap(n_p: int) -> int:
    return max(6, n_p + 1)


@dataclass(frozen=True)
class MinimalAlexander:
    gens: int
    rels: int
    matrix: tuple[tuple[TruncSeries, ...], ...]


def minimize_alexander(P: GroupPresentation, field: FieldTag, D: int | None = None) -> MinimalAlexander:
    """Split off unit entries of the completed Alexander matrix.

    Each unit pivot lets one relation eliminate one generator; what is
    left has every entry in the maximal ideal.
    """
    p = field.characteristic
    if D is None:
        D = default_cap(b1_over_field(P, p))
    M = alexander_matrix(P)
    rows = [[magnus(e, field, D) for e in row] for row in M.entries_free]
    ncols = P.ngens
    cols = list(range(ncols))
    while True:
        pivot = None
        for r, row in enumerate(rows):
            for c in cols:
                if row[c].constant_term():
                    pivot = (r, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        r, c = pivot
        prow = rows.pop(r)
        inv = prow[c].inverse()
        prow = [e * inv for e in prow]
        for row in rows:
            f = row[c]
            if f:
                for j in cols:
                    row[j] = row[j] - f * prow[j]
        cols.remove(c)
    matrix = tuple(tuple(row[j] for j in cols) for row in rows)
    return MinimalAlexander(len(cols), len(rows), matrix)


def elem_order_check(P: GroupPresentation, field: FieldTag, i: int, D: int | None = None) -> bool:
    """Every generator of E_i has Magnus order at least n_p - i."""
    n_p = b1_over_field(P, field.characteristic)
    if i < 0 or i >= n_p:
        raise ValueError(f"need 0 <= i < n_p = {n_p}, got i = {i}")
    if D is None:
        D = default_cap(n_p)
    need = n_p - i
    return all(order(magnus(g, field, D)) >= need for g in elementary_ideal_gens(P, i))


def delta1_check(P: GroupPresentation, field: FieldTag, d: int, D: int | None = None) -> bool:
    """Magnus order of Delta is at least n_p - d - 1 (requires n_p > d + 1)."""
    n_p = b1_over_field(P, field.characteristic)
    if n_p <= d + 1:
        raise NotApplicable(f"n_p = {n_p} is not greater than d + 1 = {d + 1}")
    if D is None:
        D = default_cap(n_p)
    return order(magnus(alexander_poly(P), field, D)) >= n_p - d - 1


def _augmentation_monomials(n: int, d: int) -> list[LaurentPoly]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        f = LaurentPoly.const(n, 1)
        for i in combo:
            f = f * (LaurentPoly.var(n, i) - 1)
        out.append(f)
    return out


def almost_principal_check(P: GroupPresentation, d: int) -> bool:
    """I^d * (Delta) lies in E_1, with I the augmentation ideal, over Q."""
    n = P.abelian.b1
    if n < 1:
        raise ValueError("needs b1 >= 1")
    delta = alexander_poly(P)
    if not delta:
        return True
    E1 = elementary_ideal_gens(P, 1)
    # Laurent membership: work in Q[t, u] with u * t_1 ... t_n = 1
    gens = [MPoly.from_laurent(g.terms, n, QQ).with_nvars(n + 1) for g in E1]
    gens.append(MPoly(n + 1, QQ, {(1,) * (n + 1): 1, (0,) * (n + 1): -1}))
    basis = buchberger(gens)
    for mono in _augmentation_monomials(n, d):
        f = MPoly.from_laurent((delta * mono).terms, n, QQ).with_nvars(n + 1)
        if normal_form(f, basis):
            return False
    return True


__all__ = [
    "TruncSeries", "NotApplicable", "MinimalAlexander", "order", "magnus", "b1_over_field",
    "minimize_alexander", "elem_order_check", "delta1_check", "almost_principal_check",
]
