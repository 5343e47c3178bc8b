"""Free Lie algebras in Hall-basis coordinates, graded quotients and PBW series.

Basis elements are P. Hall basic commutators.  A tree is either a letter
(an int) or a pair ``(u, v)`` of trees standing for [u, v].
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exactalg import _rref_inplace


def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def witt(m: int, k: int) -> int:
    """Dimension of the degree-k part of the free Lie algebra on m letters."""
    if k < 1:
        return 0
    total = sum(mobius(e) * m ** (k // e) for e in range(1, k + 1) if k % e == 0)
    return total // k


class HallBasis:
    """Hall basis of the free Lie algebra on ``m`` letters up to degree ``D``."""

    def __init__(self, m: int, D: int):
        if m < 0 or D < 1:
            raise ValueError("need m >= 0 and D >= 1")
        self.m, self.D = m, D
        self.trees: list = list(range(m))
        self.degree: list[int] = [1] * m
        self.left: list[int | None] = [None] * m
        self.right: list[int | None] = [None] * m
        self.index: dict = {i: i for i in range(m)}
        self.by_degree: dict[int, list[int]] = {1: list(range(m))}
        for k in range(2, D + 1):
            new = []
            for u in range(len(self.trees)):
                for v in range(u):
                    if self.degree[u] + self.degree[v] != k:
                        continue
                    if self.left[u] is not None and self.right[u] > v:
                        continue
                    new.append(((self.trees[u], self.trees[v]), u, v))
            for tree, u, v in new:
                idx = len(self.trees)
                self.trees.append(tree)
                self.degree.append(k)
                self.left.append(u)
                self.right.append(v)
                self.index[tree] = idx
            self.by_degree[k] = [self.index[t] for t, _, _ in new]
        self._pair = {(self.left[i], self.right[i]): i for i in range(m, len(self.trees))}
        self._memo: dict[tuple[int, int], dict[int, int]] = {}
        self._expand: dict[int, dict[tuple[int, ...], int]] = {}
        self.dynkin_cache: dict = {}  # left-normed brackets of words, filled by malcev

    def __len__(self):
        return len(self.trees)

    def sizes(self) -> list[int]:
        return [len(self.by_degree.get(k, [])) for k in range(1, self.D + 1)]

    def degree_offset(self, e: int) -> int:
        """Number of basis elements of degree < e (basis is sorted by degree)."""
        return sum(len(self.by_degree.get(k, [])) for k in range(1, e))

    def format(self, i: int, names: Sequence[str] | None = None) -> str:
        names = names or [chr(ord("X") + j) if self.m <= 3 else f"X{j + 1}" for j in range(self.m)]

        def go(t):
            if isinstance(t, int):
                return names[t]
            return f"[{go(t[0])},{go(t[1])}]"

        return go(self.trees[i])

    def bracket_indices(self, a: int, b: int) -> dict[int, int]:
        """[e_a, e_b] in Hall coordinates (integer coefficients).

        Raises OverflowError when the degree exceeds D.
        """
        if a == b:
            return {}
        if self.degree[a] + self.degree[b] > self.D:
            raise OverflowError("bracket degree exceeds the truncation degree")
        key = (a, b)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if a < b:
            res = {k: -c for k, c in self.bracket_indices(b, a).items()}
        elif self.left[a] is None or self.right[a] <= b:
            res = {self._pair[(a, b)]: 1}
        else:
            # [[a1,a2],b] = [[a1,b],a2] + [a1,[a2,b]]
            a1, a2 = self.left[a], self.right[a]
            res = {}
            for k, c in self.bracket_indices(a1, b).items():
                for k2, c2 in self.bracket_indices(k, a2).items():
                    res[k2] = res.get(k2, 0) + c * c2
            for k, c in self.bracket_indices(a2, b).items():
                for k2, c2 in self.bracket_indices(a1, k).items():
                    res[k2] = res.get(k2, 0) + c * c2
            res = {k: c for k, c in res.items() if c}
        self._memo[key] = res
        return res

    def expand(self, i: int) -> dict[tuple[int, ...], int]:
        """Image of e_i in the free associative algebra."""
        hit = self._expand.get(i)
        if hit is not None:
            return hit
        if self.left[i] is None:
            res = {(i,): 1}
        else:
            u, v = self.expand(self.left[i]), self.expand(self.right[i])
            res: dict = {}
            for w1, c1 in u.items():
                for w2, c2 in v.items():
                    res[w1 + w2] = res.get(w1 + w2, 0) + c1 * c2
                    res[w2 + w1] = res.get(w2 + w1, 0) - c1 * c2
            res = {w: c for w, c in res.items() if c}
        self._expand[i] = res
        return res


@lru_cache(maxsize=64)
def hall_basis(m: int, D: int) -> HallBasis:
    return HallBasis(m, D)


class GradedLie:
    """Element of the truncated free Lie algebra, sparse in Hall coordinates."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: HallBasis, coeffs: Mapping[int, object] | None = None):
        self.basis = basis
        self.coeffs = {k: Fraction(c) for k, c in (coeffs or {}).items() if c}

    @classmethod
    def generator(cls, basis: HallBasis, i: int) -> GradedLie:
        return cls(basis, {i: 1})

    @classmethod
    def from_tree(cls, basis: HallBasis, tree) -> GradedLie:
        """Any bracketing of letters, rewritten into Hall coordinates."""
        if isinstance(tree, int):
            return cls.generator(basis, tree)
        return bracket(cls.from_tree(basis, tree[0]), cls.from_tree(basis, tree[1]))

    def __add__(self, other: GradedLie) -> GradedLie:
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return GradedLie(self.basis, out)

    def __neg__(self):
        return GradedLie(self.basis, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return GradedLie(self.basis, {k: c * scalar for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GradedLie) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"GradedLie({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            parts.append(f"{c}*{self.basis.format(k)}" if c != 1 else self.basis.format(k))
        return " + ".join(parts)

    def component(self, d: int) -> GradedLie:
        deg = self.basis.degree
        return GradedLie(self.basis, {k: c for k, c in self.coeffs.items() if deg[k] == d})

    def vector(self, d: int) -> list[Fraction]:
        """Coordinates of the degree-d component in the ordered degree-d basis."""
        return [self.coeffs.get(k, Fraction(0)) for k in self.basis.by_degree.get(d, [])]

    def degrees(self) -> list[int]:
        return sorted({self.basis.degree[k] for k in self.coeffs})

    def min_degree(self) -> int | None:
        return min((self.basis.degree[k] for k in self.coeffs), default=None)

    def truncate(self, D: int) -> GradedLie:
        deg = self.basis.degree
        return GradedLie(self.basis, {k: c for k, c in self.coeffs.items() if deg[k] <= D})


def bracket(a: GradedLie, b: GradedLie, truncate: bool = False) -> GradedLie:
    """Bilinear bracket; terms above the basis degree raise unless ``truncate``."""
    B = a.basis
    if b.basis is not B:
        raise ValueError("elements live in different Hall bases")
    out: dict[int, Fraction] = {}
    deg = B.degree
    for i, ci in a.coeffs.items():
        for j, cj in b.coeffs.items():
            if deg[i] + deg[j] > B.D:
                if truncate:
                    continue
                raise OverflowError("bracket degree exceeds the truncation degree")
            for k, c in B.bracket_indices(i, j).items():
                out[k] = out.get(k, 0) + ci * cj * c
    return GradedLie(B, out)


def _span_rank(vectors: list[list[Fraction]], ncols: int) -> tuple[int, list[list[Fraction]]]:
    rows = [list(v) for v in vectors]
    piv = _rref_inplace(rows, ncols)
    return len(piv), rows[: len(piv)]


def graded_quotient_dims(relators: Iterable[GradedLie], D: int, m: int | None = None) -> list[int]:
    """a_1..a_D for the quotient of the free Lie algebra by homogeneous relators."""
    relators = list(relators)
    if m is None:
        if not relators:
            raise ValueError("number of generators needed when there are no relators")
        m = relators[0].basis.m
    B = hall_basis(m, D)
    rel = []
    for r in relators:
        if r.basis.m != m:
            raise ValueError("relators use a different number of generators")
        r = GradedLie(B, r.coeffs) if r.basis is not B else r
        degs = r.degrees()
        if len(degs) > 1:
            raise ValueError("relators must be homogeneous")
        if degs and degs[0] < 2:
            raise ValueError("relators must have degree >= 2")
        rel.append(r)
    dims = []
    prev: list[GradedLie] = []
    for e in range(1, D + 1):
        cand = [r for r in rel if r.degrees() == [e]]
        if e > 1:
            gens = [GradedLie.generator(B, i) for i in range(m)]
            cand += [bracket(g, v) for g in gens for v in prev]
        size = len(B.by_degree.get(e, []))
        r, rows = _span_rank([c.vector(e) for c in cand], size)
        prev = [GradedLie(B, dict(zip(B.by_degree[e], row))) for row in rows]
        dims.append(witt(m, e) - r)
    return dims


def _poly_mul_trunc(a: list[int], b: list[int], D: int) -> list[int]:
    out = [0] * (D + 1)
    for i, x in enumerate(a[: D + 1]):
        if x:
            for j, y in enumerate(b[: D + 1 - i]):
                out[i + j] += x * y
    return out


def pbw_product(dims: Sequence[int]) -> list[int]:
    """Coefficients of prod_i (1 - z^i)^{a_i} modulo z^{D+1}, D = len(dims)."""
    D = len(dims)
    out = [1] + [0] * D
    for i, a in enumerate(dims, start=1):
        if a < 0:
            raise ValueError("dimensions must be nonnegative")
        factor = [0] * (D + 1)
        factor[0] = 1
        if i <= D:
            factor[i] = -1
        for _ in range(a):
            out = _poly_mul_trunc(out, factor, D)
    return out


def pbw_series_check(dims: Sequence[int], target: Sequence[int]) -> bool:
    """prod (1 - z^i)^{a_i} agrees with ``target`` (low degree first) mod z^{D+1}."""
    D = len(dims)
    want = (list(target) + [0] * (D + 1))[: D + 1]
    return pbw_product(dims) == want


def inert_divisibility(d: int) -> bool:
    """(1 - z)^2 divides 1 - 2z + z^d in Z[z]."""
    if d < 2:
        raise ValueError("d must be >= 2")
    # long division by z^2 - 2z + 1, high degree first
    num = [0] * (d + 1)
    num[0] += 1
    num[1] += -2
    num[d] += 1
    rem = num[::-1]
    divisor = [1, -2, 1]
    for i in range(len(rem) - 2):
        q = rem[i]
        if q:
            for j, c in enumerate(divisor):
                rem[i + j] -= q * c
    return not any(rem)


def dims_from_target(target: Sequence[int], m: int, D: int) -> list[int]:
    """The unique a_1..a_D whose PBW product matches ``target`` mod z^{D+1}."""
    dims: list[int] = []
    want = (list(target) + [0] * (D + 1))[: D + 1]
    for k in range(1, D + 1):
        cur = pbw_product(dims + [0] * (D - len(dims)))
        # coefficient of z^k changes by -a_k when a_k is added
        a = cur[k] - want[k]
        if a < 0:
            raise ValueError("target is not the PBW series of a graded Lie algebra")
        dims.append(a)
    if dims and m and dims[0] != m:
        raise ValueError("degree-one dimension disagrees with m")
    return dims


__all__ = [
    "HallBasis", "GradedLie", "hall_basis", "bracket", "witt", "mobius", "graded_quotient_dims",
    "pbw_product", "pbw_series_check", "inert_divisibility", "dims_from_target",
]
