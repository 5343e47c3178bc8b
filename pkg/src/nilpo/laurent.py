"""Laurent polynomials over Z and the group ring of G_ab.

Polynomial data is a dict from exponent tuples to nonzero ints.  The gcd
works on genuine polynomials (exponents shifted to be nonnegative) by
recursion on the last variable with primitive pseudo-remainder sequences.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import gcd as igcd
from typing import Iterable, Mapping

from .exactalg import CycloNum, zeta
from .presentation import AbelianStructure

Exp = tuple[int, ...]
PolyDict = dict[Exp, int]


def _clean(terms: Mapping[Exp, int]) -> PolyDict:
    return {e: c for e, c in terms.items() if c}


def _add(a: PolyDict, b: PolyDict, sign: int = 1) -> PolyDict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a: PolyDict, b: PolyDict) -> PolyDict:
    out: PolyDict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return _clean(out)


class LaurentPoly:
    """Element of Z[t_1^{+-1}, ..., t_n^{+-1}]."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exp, int] | None = None):
        self.nvars = nvars
        self.terms: PolyDict = _clean(terms or {})
        for e in self.terms:
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, nvars: int, c: int) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Iterable[int], c: int = 1) -> LaurentPoly:
        e = tuple(exps)
        return cls(len(e), {e: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> LaurentPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    # arithmetic -------------------------------------------------------------
    def _lift(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LaurentPoly(self.nvars, _add(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LaurentPoly(self.nvars, _add(self.terms, o.terms, -1))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LaurentPoly(self.nvars, _mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials are invertible")
            return LaurentPoly(self.nvars, {tuple(-x * (-k) for x in e): c ** (-k)})
        out = LaurentPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {render(self)!r})"

    def __str__(self):
        return render(self)

    # queries ---------------------------------------------------------------
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.nvars}

    def min_exponents(self) -> Exp:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, by: Iterable[int]) -> LaurentPoly:
        by = tuple(by)
        return LaurentPoly(self.nvars, {tuple(x + y for x, y in zip(e, by)): c for e, c in self.terms.items()})

    def as_polynomial(self) -> PolyDict:
        """Terms shifted so every variable has minimal exponent 0."""
        lo = self.min_exponents()
        return {tuple(x - y for x, y in zip(e, lo)): c for e, c in self.terms.items()}

    def at_one(self) -> int:
        return sum(self.terms.values())

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = igcd(g, c)
        return g

    def substitute_ints(self, values: Iterable[int]) -> int:
        vals = list(values)
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k < 0:
                    raise ValueError("integer substitution needs nonnegative exponents")
                term *= v ** k
            total += term
        return total

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient in the Laurent ring; raises ArithmeticError if inexact."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        a, b = self.as_polynomial(), other.as_polynomial()
        q = _divexact(a, b)
        shift = tuple(x - y for x, y in zip(self.min_exponents(), other.min_exponents()))
        return LaurentPoly(self.nvars, q).shift(shift)

    def divides(self, other: LaurentPoly) -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True


# ---------------------------------------------------------------------------
# polynomial (nonnegative exponent) helpers


def _lex_lead(p: PolyDict) -> Exp:
    return max(p)


def _divexact(a: PolyDict, b: PolyDict) -> PolyDict:
    """Exact quotient a / b of polynomials over Z (lex division)."""
    if not b:
        raise ZeroDivisionError
    rem = dict(a)
    q: PolyDict = {}
    lb = _lex_lead(b)
    cb = b[lb]
    while rem:
        lr = _lex_lead(rem)
        diff = tuple(x - y for x, y in zip(lr, lb))
        if any(d < 0 for d in diff) or rem[lr] % cb:
            raise ArithmeticError("polynomial division is not exact")
        c = rem[lr] // cb
        q[diff] = c
        for e, v in b.items():
            key = tuple(x + y for x, y in zip(e, diff))
            nv = rem.get(key, 0) - c * v
            if nv:
                rem[key] = nv
            else:
                rem.pop(key, None)
    return q


def _split_last(p: PolyDict) -> dict[int, PolyDict]:
    """View p in Z[x_1..x_{k-1}][x_k]: degree -> coefficient polynomial."""
    out: dict[int, PolyDict] = {}
    for e, c in p.items():
        out.setdefault(e[-1], {})[e[:-1]] = c
    return out


def _join_last(u: dict[int, PolyDict]) -> PolyDict:
    out: PolyDict = {}
    for d, coeff in u.items():
        for e, c in coeff.items():
            out[e + (d,)] = c
    return out


def _poly_gcd(a: PolyDict, b: PolyDict, k: int) -> PolyDict:
    """gcd of polynomials in k variables over Z, up to sign."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    if k == 0:
        return {(): igcd(a[()], b[()])}
    ua, ub = _split_last(a), _split_last(b)
    ca = _content_rec(ua, k - 1)
    cb = _content_rec(ub, k - 1)
    c = _poly_gcd(ca, cb, k - 1)
    pa = {d: _divexact(v, ca) for d, v in ua.items()}
    pb = {d: _divexact(v, cb) for d, v in ub.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while pb and max(pb) > 0:
        r = _prem(pa, pb, k - 1)
        if not r:
            pa = pb
            pb = {}
            break
        rc = _content_rec(r, k - 1)
        r = {d: _divexact(v, rc) for d, v in r.items()}
        pa, pb = pb, r
    if pb:  # pb is a nonzero constant in x_k, so the primitive gcd is trivial
        g = {0: {(0,) * (k - 1): 1}}
    else:
        g = pa
    gc = _content_rec(g, k - 1)
    g = {d: _divexact(v, gc) for d, v in g.items()}
    return _mul(_join_last({0: c}), _join_last(g))


def _content_rec(u: dict[int, PolyDict], k: int) -> PolyDict:
    g: PolyDict = {}
    for v in u.values():
        g = _poly_gcd(g, v, k)
        if k == 0 and abs(g.get((), 0)) == 1:
            break
    if k == 0:
        return {(): abs(g[()])}
    return g


def _prem(a: dict[int, PolyDict], b: dict[int, PolyDict], k: int) -> dict[int, PolyDict]:
    """Pseudo-remainder of univariate polynomials with polynomial coefficients."""
    da, db = max(a), max(b)
    lb = b[db]
    r = {d: dict(v) for d, v in a.items()}
    for _ in range(da - db + 1):
        if not r:
            break
        dr = max(r)
        if dr < db:
            r = {d: _mul(v, lb) for d, v in r.items()}
            continue
        lr = r[dr]
        new: dict[int, PolyDict] = {}
        for d, v in r.items():
            new[d] = _mul(v, lb)
        for d, v in b.items():
            key = d + dr - db
            new[key] = _add(new.get(key, {}), _mul(v, lr), -1)
        r = {d: v for d, v in new.items() if v}
    return r


# ---------------------------------------------------------------------------
# public operations


def _graded_lex_key(e: Exp):
    return (sum(e), e)


def normalize_unit(f: LaurentPoly) -> LaurentPoly:
    """Canonical associate: shift minimal exponents to 0, positive lex-leading coefficient."""
    if not f:
        return f
    p = f.as_polynomial()
    if p[max(p)] < 0:
        p = {e: -c for e, c in p.items()}
    return LaurentPoly(f.nvars, p)


def associates(f: LaurentPoly, g: LaurentPoly) -> bool:
    return normalize_unit(f) == normalize_unit(g)


def gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Normalized gcd in Z[t^{+-1}]."""
    if f.nvars != g.nvars:
        raise ValueError("variable count mismatch")
    if not f:
        return normalize_unit(g)
    if not g:
        return normalize_unit(f)
    return normalize_unit(LaurentPoly(f.nvars, _poly_gcd(f.as_polynomial(), g.as_polynomial(), f.nvars)))


def gcd_list(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    g = LaurentPoly(nvars)
    for p in polys:
        g = gcd(g, p)
        if g == 1:
            break
    return g


def evaluate_monomial(exps: Iterable[int], values: list[int], level: int) -> int:
    """Exponent of zeta_level for prod values[i]^exps[i] (values are zeta exponents)."""
    return sum(v * e for v, e in zip(values, exps)) % level


def evaluate(f, rho) -> CycloNum:
    """Evaluate a LaurentPoly or AbGroupRingElem at a character."""
    N = rho.level
    acc = [0] * N
    if isinstance(f, LaurentPoly):
        if f.nvars != len(rho.free):
            raise ValueError("character has the wrong number of free coordinates")
        for e, c in f.terms.items():
            acc[sum(a * x for a, x in zip(rho.free, e)) % N] += c
    elif isinstance(f, AbGroupRingElem):
        if len(rho.torsion) != len(f.structure.torsion) or len(rho.free) != f.structure.b1:
            raise ValueError("character inconsistent with the abelian structure")
        rho.check(f.structure)
        for (fe, te), c in f.terms.items():
            k = sum(a * x for a, x in zip(rho.free, fe)) + sum(a * x for a, x in zip(rho.torsion, te))
            acc[k % N] += c
    else:
        raise TypeError(f"cannot evaluate {type(f).__name__}")
    return CycloNum(N, acc)


class DeltaVariety(enum.Enum):
    EMPTY = "empty"
    EXACTLY_ONE = "exactly-one"
    LARGER = "larger"


def delta_variety_in_one(f: LaurentPoly) -> DeltaVariety:
    """Shape of V(f) in (C*)^n relative to the trivial character."""
    n = f.nvars
    if n == 0:
        return DeltaVariety.EMPTY if f else DeltaVariety.EXACTLY_ONE
    if not f:
        return DeltaVariety.LARGER
    if f.is_monomial():
        return DeltaVariety.EMPTY
    if n >= 2:
        return DeltaVariety.LARGER
    t_minus_1 = LaurentPoly(1, {(1,): 1, (0,): -1})
    g = f
    e = 0
    while True:
        try:
            g = g.exact_div(t_minus_1)
        except ArithmeticError:
            break
        e += 1
    if e >= 1 and g.is_monomial():
        return DeltaVariety.EXACTLY_ONE
    return DeltaVariety.LARGER


# ---------------------------------------------------------------------------
# text rendering


def var_names(n: int) -> list[str]:
    return ["t"] if n == 1 else [f"t{i + 1}" for i in range(n)]


def render(f: LaurentPoly, names: list[str] | None = None) -> str:
    """Graded-lex descending rendering, e.g. ``t1^2 - t1 + 1``."""
    if not f:
        return "0"
    names = names or var_names(f.nvars)
    parts = []
    for e in sorted(f.terms, key=_graded_lex_key, reverse=True):
        c = f.terms[e]
        mono = []
        for name, k in zip(names, e):
            if k == 1:
                mono.append(name)
            elif k:
                mono.append(f"{name}^{k}")
        body = "*".join(mono)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not parts:
            parts.append(text if c > 0 else "-" + text)
        else:
            parts.append(("+ " if c > 0 else "- ") + text)
    return " ".join(parts)


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*((?:[A-Za-z]\w*(?:\^-?\d+)?\s*\*?\s*)*)")


def parse_laurent(text: str, nvars: int, names: list[str] | None = None) -> LaurentPoly:
    """Inverse of :func:`render` (accepts ``t`` for a single variable)."""
    names = names or var_names(nvars)
    index = {n: i for i, n in enumerate(names)}
    s = text.strip()
    if s == "0":
        return LaurentPoly(nvars)
    terms: PolyDict = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        e = [0] * nvars
        body = m.group(3) or ""
        if not body.strip() and not m.group(2):
            raise ValueError(f"empty term in {text!r}")
        for vm in re.finditer(r"([A-Za-z]\w*)(?:\^(-?\d+))?", body):
            name = vm.group(1)
            if name not in index:
                raise ValueError(f"unknown variable {name!r}")
            e[index[name]] += int(vm.group(2)) if vm.group(2) else 1
        key = tuple(e)
        terms[key] = terms.get(key, 0) + sign * coeff
        pos = m.end()
    return LaurentPoly(nvars, terms)


# ---------------------------------------------------------------------------
# group ring of G_ab


class AbGroupRingElem:
    """Element of Z[G_ab]; keys are (free exponents, torsion residues)."""

    __slots__ = ("structure", "terms")

    def __init__(self, structure: AbelianStructure, terms: Mapping[tuple[Exp, Exp], int] | None = None):
        self.structure = structure
        clean: dict[tuple[Exp, Exp], int] = {}
        for (fe, te), c in (terms or {}).items():
            key = (tuple(fe), tuple(x % d for x, d in zip(te, structure.torsion)))
            clean[key] = clean.get(key, 0) + c
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def from_exponent_vector(cls, structure: AbelianStructure, v, c: int = 1) -> AbGroupRingElem:
        return cls(structure, {(structure.free_coords(v), structure.torsion_coords(v)): c})

    def __add__(self, other: AbGroupRingElem) -> AbGroupRingElem:
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return AbGroupRingElem(self.structure, terms)

    def __neg__(self):
        return AbGroupRingElem(self.structure, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: AbGroupRingElem) -> AbGroupRingElem:
        out: dict = {}
        for (fa, ta), ca in self.terms.items():
            for (fb, tb), cb in other.terms.items():
                key = (tuple(x + y for x, y in zip(fa, fb)), tuple(x + y for x, y in zip(ta, tb)))
                out[key] = out.get(key, 0) + ca * cb
        return AbGroupRingElem(self.structure, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, AbGroupRingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def free_projection(self) -> LaurentPoly:
        """Image under torsion -> 1."""
        out: PolyDict = {}
        for (fe, _), c in self.terms.items():
            out[fe] = out.get(fe, 0) + c
        return LaurentPoly(self.structure.b1, out)

    def specialize_torsion(self, torsion_exps: Iterable[int], level: int) -> dict[Exp, CycloNum]:
        """Coefficients in Q(zeta_level)[t^{+-1}] after fixing the torsion character."""
        te = list(torsion_exps)
        out: dict[Exp, list[int]] = {}
        for (fe, tv), c in self.terms.items():
            k = sum(a * x for a, x in zip(te, tv)) % level
            acc = out.setdefault(fe, [0] * level)
            acc[k] += c
        res = {fe: CycloNum(level, acc) for fe, acc in out.items()}
        return {fe: v for fe, v in res.items() if v}

    def __repr__(self):
        return f"AbGroupRingElem({self.terms})"


__all__ = [
    "LaurentPoly", "AbGroupRingElem", "DeltaVariety", "normalize_unit", "gcd", "gcd_list",
    "evaluate", "delta_variety_in_one", "render", "parse_laurent", "associates", "zeta",
]
