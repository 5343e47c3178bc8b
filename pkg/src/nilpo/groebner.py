"""Buchberger's algorithm over exact fields, and torus zero-set tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .exactalg import FieldTag

Exp = tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    perm: tuple[int, ...] | None = None  # variable priority, most significant first

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e: Exp):
        if self.perm is not None:
            e = tuple(e[i] for i in self.perm)
        if self.kind == "lex":
            return e
        return (sum(e), tuple(-x for x in reversed(e)))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class MPoly:
    """Polynomial in ``nvars`` variables with coefficients in ``field``."""

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field: FieldTag, terms: Mapping[Exp, object] | None = None):
        self.nvars = nvars
        self.field = field
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent length does not match nvars")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent in a polynomial")
            c = field(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, field, terms) -> MPoly:
        p = cls.__new__(cls)
        p.nvars, p.field, p.terms = nvars, field, terms
        return p

    @classmethod
    def zero(cls, nvars: int, field: FieldTag) -> MPoly:
        return cls._raw(nvars, field, {})

    @classmethod
    def constant(cls, nvars: int, field: FieldTag, c) -> MPoly:
        return cls(nvars, field, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, field: FieldTag, i: int) -> MPoly:
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, field, {tuple(e): field.one})

    @classmethod
    def from_laurent(cls, terms: Mapping[Exp, object], nvars: int, field: FieldTag) -> MPoly:
        """Clear denominators by the minimal monomial (a unit on the torus)."""
        if not terms:
            return cls.zero(nvars, field)
        lo = [min(e[i] for e in terms) for i in range(nvars)]
        return cls(nvars, field, {tuple(x - y for x, y in zip(e, lo)): c for e, c in terms.items()})

    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.nvars != self.nvars or other.field != self.field:
                raise ValueError("incompatible polynomials")
            return other
        return MPoly.constant(self.nvars, self.field, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out[e] + c if e in out else c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly._raw(self.nvars, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out[e] + c1 * c2 if e in out else c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(self.nvars, self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MPoly.constant(self.nvars, self.field, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return self == self._lift(other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.field}, {self.terms})"

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def render(self, names: list[str] | None = None, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        names = names or [f"z{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            coef = str(c)
            neg = coef.startswith("-")
            coef = coef.lstrip("-")
            if not mono:
                text = coef
            elif coef == "1":
                text = mono
            elif "/" in coef or "zeta" in coef:
                text = f"({coef})*{mono}"
            else:
                text = f"{coef}*{mono}"
            if parts:
                parts.append(("- " if neg else "+ ") + text)
            else:
                parts.append(("-" if neg else "") + text)
        return " ".join(parts)

    def with_nvars(self, n: int) -> MPoly:
        """Append unused variables."""
        if n < self.nvars:
            raise ValueError("cannot drop variables")
        pad = (0,) * (n - self.nvars)
        return MPoly._raw(n, self.field, {e + pad: c for e, c in self.terms.items()})

    def leading(self, order: MonomialOrder = GREVLEX) -> tuple[Exp, object]:
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def monic(self, order: MonomialOrder = GREVLEX) -> MPoly:
        if not self.terms:
            return self
        _, c = self.leading(order)
        inv = self.field.one / c
        return MPoly._raw(self.nvars, self.field, {e: v * inv for e, v in self.terms.items()})

    def scaled_shift(self, c, shift: Exp) -> MPoly:
        return MPoly._raw(self.nvars, self.field,
                          {tuple(a + b for a, b in zip(e, shift)): v * c for e, v in self.terms.items()})


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(f: MPoly, basis: list[MPoly], order: MonomialOrder = GREVLEX) -> MPoly:
    """Full reduction of ``f`` modulo ``basis``."""
    leads = [(g.leading(order), g) for g in basis if g]
    p = dict(f.terms)
    rem: dict = {}
    key = order.key
    while p:
        e = max(p, key=key)
        c = p[e]
        for (le, lc), g in leads:
            if _divides(le, e):
                q = c / lc
                shift = tuple(x - y for x, y in zip(e, le))
                for ge, gc in g.terms.items():
                    te = tuple(a + b for a, b in zip(ge, shift))
                    v = p[te] - q * gc if te in p else -q * gc
                    if v:
                        p[te] = v
                    else:
                        del p[te]
                break
        else:
            rem[e] = c
            del p[e]
    return MPoly._raw(f.nvars, f.field, rem)


def _spoly(f: MPoly, g: MPoly, order: MonomialOrder) -> MPoly:
    (ef, cf), (eg, cg) = f.leading(order), g.leading(order)
    L = _lcm(ef, eg)
    a = f.scaled_shift(f.field.one / cf, tuple(x - y for x, y in zip(L, ef)))
    b = g.scaled_shift(g.field.one / cg, tuple(x - y for x, y in zip(L, eg)))
    return a - b


def reduce_basis(G: list[MPoly], order: MonomialOrder = GREVLEX) -> list[MPoly]:
    """Minimal, interreduced, monic basis sorted by descending leading monomial."""
    G = [g.monic(order) for g in G if g]
    minimal: list[MPoly] = []
    for i, g in enumerate(G):
        lg = g.leading(order)[0]
        redundant = False
        for j, h in enumerate(G):
            if i == j:
                continue
            lh = h.leading(order)[0]
            if _divides(lh, lg) and (lh != lg or j < i):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        out.append(normal_form(g, others, order).monic(order))
    out.sort(key=lambda g: order.key(g.leading(order)[0]), reverse=True)
    return out


def buchberger(gens: Iterable[MPoly], order: MonomialOrder = GREVLEX) -> list[MPoly]:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    G: list[MPoly] = []
    for g in gens:
        if g:
            G.append(g.monic(order))
    if not G:
        return []
    if any(g.is_constant() for g in G):
        return [MPoly.constant(G[0].nvars, G[0].field, 1)]
    lead = [g.leading(order)[0] for g in G]
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    done: set[tuple[int, int]] = set()
    while pairs:
        i, j = min(pairs, key=lambda p: (order.key(_lcm(lead[p[0]], lead[p[1]])), p))
        pairs.discard((i, j))
        done.add((i, j))
        L = _lcm(lead[i], lead[j])
        # first criterion: coprime leading monomials
        if all(a == 0 or b == 0 for a, b in zip(lead[i], lead[j])):
            continue
        # second criterion: a third leading monomial dividing the lcm
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not _divides(lead[k], L):
                continue
            if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
                skip = True
                break
        if skip:
            continue
        r = normal_form(_spoly(G[i], G[j], order), G, order)
        if not r:
            continue
        r = r.monic(order)
        if r.is_constant():
            return [MPoly.constant(r.nvars, r.field, 1)]
        k = len(G)
        G.append(r)
        lead.append(r.leading(order)[0])
        pairs.update((a, k) for a in range(k))
    return reduce_basis(G, order)


def one_in_ideal(gens: Iterable[MPoly], order: MonomialOrder = GREVLEX) -> bool:
    gens = [g for g in gens if g]
    if not gens:
        return False
    if any(g.is_constant() for g in gens):
        return True
    B = buchberger(gens, order)
    return len(B) == 1 and B[0].is_constant()


def ideal_contains(gens: Iterable[MPoly], f: MPoly, order: MonomialOrder = GREVLEX) -> bool:
    B = buchberger(gens, order)
    return not normal_form(f, B, order)


def _torus_ring_gens(gens: list[MPoly], n: int) -> list[MPoly]:
    """Embed into t_1..t_n, u, y and add u*t_1*...*t_n - 1."""
    if not gens:
        return []
    field = gens[0].field
    lifted = [g.with_nvars(n + 2) for g in gens]
    u_prod = MPoly(n + 2, field, {(1,) * n + (1, 0): 1, (0,) * (n + 2): -1})
    return lifted + [u_prod]


def torus_zero_set_empty(gens: list[MPoly], n: int) -> bool:
    """V(gens) does not meet the torus (C*)^n."""
    gens = [g for g in gens if g]
    if not gens:
        return False
    if any(g.is_constant() for g in gens):
        return True
    return one_in_ideal(_torus_ring_gens(gens, n))


def torus_zero_set_in_one(gens: list[MPoly], n: int) -> bool:
    """V(gens) intersected with (C*)^n is contained in {(1, ..., 1)}."""
    gens = [g for g in gens if g]
    if n == 0:
        return True
    if not gens:
        return False
    if any(g.is_constant() for g in gens):
        return True
    field = gens[0].field
    base = _torus_ring_gens(gens, n)
    for i in range(n):
        # 1 - y*(t_i - 1)
        e_ti_y = [0] * (n + 2)
        e_ti_y[i] = 1
        e_ti_y[n + 1] = 1
        e_y = [0] * (n + 2)
        e_y[n + 1] = 1
        rab = MPoly(n + 2, field, {(0,) * (n + 2): 1, tuple(e_ti_y): -1, tuple(e_y): 1})
        if not one_in_ideal(base + [rab]):
            return False
    return True


__all__ = [
    "MPoly", "MonomialOrder", "GREVLEX", "LEX", "buchberger", "normal_form", "reduce_basis",
    "one_in_ideal", "ideal_contains", "torus_zero_set_empty", "torus_zero_set_in_one",
]
