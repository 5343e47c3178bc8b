"""Truncated Malcev Lie algebras of finitely presented groups.

Group relators become Lie series through x_i -> exp(X_i) and log, computed
in the truncated free associative algebra.  Lie elements are read back in
Hall coordinates with the Dynkin map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .exactalg import QQ, _rref_inplace, rank_kernel
from .lie import GradedLie, HallBasis, bracket, hall_basis, witt
from .presentation import FreeWord, GroupPresentation

Word = tuple[int, ...]


class NCPoly:
    """Element of the free associative algebra on m letters, truncated at length D."""

    __slots__ = ("m", "D", "terms")

    def __init__(self, m: int, D: int, terms: Mapping[Word, object] | None = None):
        self.m, self.D = m, D
        self.terms = {tuple(w): Fraction(c) for w, c in (terms or {}).items() if c and len(w) <= D}

    @classmethod
    def _raw(cls, m, D, terms):
        p = cls.__new__(cls)
        p.m, p.D, p.terms = m, D, terms
        return p

    @classmethod
    def const(cls, m: int, D: int, c) -> NCPoly:
        return cls(m, D, {(): c})

    @classmethod
    def letter(cls, m: int, D: int, i: int, c=1) -> NCPoly:
        return cls(m, D, {(i,): c})

    def _lift(self, other) -> NCPoly:
        return other if isinstance(other, NCPoly) else NCPoly.const(self.m, self.D, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly._raw(self.m, self.D, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw(self.m, self.D, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return NCPoly._raw(self.m, self.D, {w: c * other for w, c in self.terms.items() if c * other})
        out: dict = {}
        D = self.D
        for w1, c1 in self.terms.items():
            room = D - len(w1)
            for w2, c2 in other.terms.items():
                if len(w2) > room:
                    continue
                w = w1 + w2
                v = out.get(w, 0) + c1 * c2
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return NCPoly._raw(self.m, self.D, out)

    def __rmul__(self, scalar):
        return self * scalar

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"NCPoly({self.terms})"

    def component(self, d: int) -> NCPoly:
        return NCPoly._raw(self.m, self.D, {w: c for w, c in self.terms.items() if len(w) == d})

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))


def nc_exp(a: NCPoly) -> NCPoly:
    if a.constant_term():
        raise ValueError("exp needs zero constant term")
    out = NCPoly.const(a.m, a.D, 1)
    power = out
    for k in range(1, a.D + 1):
        power = power * a
        if not power:
            break
        out = out + power * Fraction(1, factorial(k))
    return out


def nc_log(a: NCPoly) -> NCPoly:
    """log of a series with constant term 1."""
    if a.constant_term() != 1:
        raise ValueError("log needs constant term 1")
    h = a - 1
    out = NCPoly(a.m, a.D)
    power = NCPoly.const(a.m, a.D, 1)
    for k in range(1, a.D + 1):
        power = power * h
        if not power:
            break
        out = out + power * Fraction((-1) ** (k + 1), k)
    return out


def lie_to_nc(x: GradedLie, D: int | None = None) -> NCPoly:
    B = x.basis
    D = B.D if D is None else D
    out: dict = {}
    for k, c in x.coeffs.items():
        for w, v in B.expand(k).items():
            out[w] = out.get(w, 0) + c * v
    return NCPoly(B.m, D, out)


class NonLieResidue(AssertionError):
    """A series expected to be a Lie element is not one."""


def _dynkin_word(B: HallBasis, w: Word, cache: dict) -> GradedLie:
    hit = cache.get(w)
    if hit is None:
        if len(w) == 1:
            hit = GradedLie.generator(B, w[0])
        else:
            hit = bracket(_dynkin_word(B, w[:-1], cache), GradedLie.generator(B, w[-1]))
        cache[w] = hit
    return hit


def nc_to_lie(a: NCPoly, B: HallBasis | None = None) -> GradedLie:
    """Hall coordinates of a Lie element of the free associative algebra.

    Each degree-k component p satisfies p = theta(p) / k, theta the
    left-normed bracketing; the result is expanded back and compared.
    """
    if B is None:
        B = hall_basis(a.m, a.D)
    if a.constant_term():
        raise NonLieResidue("nonzero constant term")
    cache = B.dynkin_cache
    out: dict[int, Fraction] = {}
    for w, c in a.terms.items():
        for k, v in _dynkin_word(B, w, cache).coeffs.items():
            out[k] = out.get(k, 0) + c * v / len(w)
    res = GradedLie(B, out)
    if lie_to_nc(res, a.D) != a:
        raise NonLieResidue("series is not a Lie element")
    return res


def bch(a: GradedLie, b: GradedLie, D: int | None = None) -> GradedLie:
    """log(exp(a) exp(b)) up to degree D."""
    B = a.basis
    D = B.D if D is None else D
    return nc_to_lie(nc_log(nc_exp(lie_to_nc(a, D)) * nc_exp(lie_to_nc(b, D))), B)


def group_to_lie(w: FreeWord, m: int, D: int) -> GradedLie:
    """log of the image of w under x_i -> exp(X_i)."""
    B = hall_basis(m, D)
    acc = NCPoly.const(m, D, 1)
    for g, e in w.letters:
        acc = acc * nc_exp(NCPoly.letter(m, D, g, e))
    return nc_to_lie(nc_log(acc), B)


# ---------------------------------------------------------------------------
# Minimal presentations


@dataclass(frozen=True)
class MalcevPresentation:
    ngens: int
    D: int
    relators: tuple[GradedLie, ...]
    eliminated: tuple[int, ...] = ()  # original generators solved for

    @property
    def nrels(self) -> int:
        return len(self.relators)

    def __post_init__(self):
        for r in self.relators:
            if r.component(1):
                raise ValueError("relators of a minimal presentation have no linear part")


def _apply_hom(x: GradedLie, images: Sequence[GradedLie], target: HallBasis, memo: dict) -> GradedLie:
    """Image of x under the Lie map sending letter i to images[i], truncated."""
    out = GradedLie(target)
    for k, c in x.coeffs.items():
        img = memo.get(k)
        if img is None:
            B = x.basis
            if B.left[k] is None:
                img = images[k]
            else:
                img = bracket(_apply_hom(GradedLie.generator(B, B.left[k]), images, target, memo),
                              _apply_hom(GradedLie.generator(B, B.right[k]), images, target, memo),
                              truncate=True)
            memo[k] = img
        out = out + img * c
    return out


def minimize_presentation(relators: Sequence[GradedLie], m: int, D: int) -> MalcevPresentation:
    """Split off relators with nonzero linear part together with one generator each."""
    src = hall_basis(m, D)
    rels = [GradedLie(src, r.coeffs) for r in relators]
    # row-reduce the linear parts, tracking the relator combinations
    s = len(rels)
    aug = [[r.coeffs.get(j, Fraction(0)) for j in range(m)] + [Fraction(int(i == k)) for k in range(s)]
           for i, r in enumerate(rels)]
    pivots = _rref_inplace(aug, m)
    rho = len(pivots)
    new_rels = []
    for row in aug:
        combo = GradedLie(src)
        for k in range(s):
            if row[m + k]:
                combo = combo + rels[k] * row[m + k]
        new_rels.append(combo)
    # together with the pivot rows these give an invertible change of relators
    new_rels += _kernel_combinations(rels, m, s)
    free = [j for j in range(m) if j not in pivots]
    n = len(free)
    tgt = hall_basis(n, D) if n else None
    if tgt is None:
        return MalcevPresentation(0, D, (), tuple(pivots))
    pos = {j: i for i, j in enumerate(free)}
    # solve X_p = -(sum_j c_j X_j) - h_p(X) by fixed-point iteration
    images: list[GradedLie] = [GradedLie(tgt) for _ in range(m)]
    for j in free:
        images[j] = GradedLie.generator(tgt, pos[j])
    for _ in range(D + 1):
        memo: dict = {}
        nxt = list(images)
        for row_idx, p in enumerate(pivots):
            R = new_rels[row_idx]
            rest = R - GradedLie.generator(src, p)
            nxt[p] = -_apply_hom(rest, images, tgt, memo)
        if all(a == b for a, b in zip(nxt, images)):
            break
        images = nxt
    memo = {}
    out = []
    for R in new_rels[rho:]:
        img = _apply_hom(R, images, tgt, memo)
        if img.component(1):
            raise AssertionError("substitution left a linear part")
        out.append(img)
    return MalcevPresentation(n, D, tuple(out), tuple(pivots))


def _kernel_combinations(rels, m, s):
    """Relator combinations whose linear parts vanish, one per kernel vector."""
    lin = [[r.coeffs.get(j, Fraction(0)) for r in rels] for j in range(m)]
    _, ker = rank_kernel(lin, QQ, ncols=s)
    out = []
    for v in ker:
        combo = GradedLie(rels[0].basis)
        for k, c in enumerate(v):
            if c:
                combo = combo + rels[k] * c
        out.append(combo)
    return out


def malcev_presentation(P: GroupPresentation, D: int) -> MalcevPresentation:
    rels = [group_to_lie(w, P.ngens, D) for w in P.relators]
    return minimize_presentation(rels, P.ngens, D)


def ideal_span(MP: MalcevPresentation, D: int | None = None) -> tuple[HallBasis | None, list[list[Fraction]]]:
    """Echelon basis of the Lie ideal generated by the relators in L_{<=D}."""
    D = MP.D if D is None else D
    if MP.ngens == 0:
        return None, []
    B = hall_basis(MP.ngens, D)
    N = len(B)
    rows: list[list[Fraction]] = []
    pivots: list[int] = []

    def vec(x: GradedLie):
        return [x.coeffs.get(k, Fraction(0)) for k in range(N)]

    def reduce(v):
        v = list(v)
        for row, p in zip(rows, pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(v) -> bool:
        v = reduce(v)
        p = next((i for i, a in enumerate(v) if a), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [a * inv for a in v]
        for i, row in enumerate(rows):
            if row[p]:
                f = row[p]
                rows[i] = [a - f * b for a, b in zip(row, v)]
        rows.append(v)
        pivots.append(p)
        return True

    queue = []
    for r in MP.relators:
        x = GradedLie(B, r.coeffs).truncate(D)
        if add(vec(x)):
            queue.append(x)
    gens = [GradedLie.generator(B, i) for i in range(MP.ngens)]
    while queue:
        x = queue.pop()
        for g in gens:
            y = bracket(g, x, truncate=True)
            if y and add(vec(y)):
                queue.append(y)
    return B, rows


def malcev_gr_dims(MP: MalcevPresentation, D: int | None = None) -> list[int]:
    """dim (L_{>=e} + J) / (L_{>=e+1} + J) for e = 1..D."""
    D = MP.D if D is None else D
    if D > MP.D:
        raise ValueError("truncation degree exceeds that of the presentation")
    if MP.ngens == 0:
        return [0] * D
    B, J = ideal_span(MP, D)
    dims = []
    prev = 0  # rank of J projected to degrees < e
    for e in range(1, D + 1):
        hi = B.degree_offset(e + 1)
        proj = [row[:hi] for row in J]
        r = len(_rref_inplace([list(p) for p in proj], hi)) if proj else 0
        dims.append(witt(MP.ngens, e) - (r - prev))
        prev = r
    return dims


def group_gr_dims(P: GroupPresentation, D: int) -> list[int]:
    return malcev_gr_dims(malcev_presentation(P, D), D)


__all__ = [
    "NCPoly", "nc_exp", "nc_log", "lie_to_nc", "nc_to_lie", "bch", "group_to_lie", "NonLieResidue",
    "MalcevPresentation", "minimize_presentation", "malcev_presentation", "malcev_gr_dims",
    "group_gr_dims", "ideal_span",
]
