"""Fox calculus, Alexander matrices and degree-one jump loci.

The Alexander matrix has one row per relator and one column per generator.
Characters are finite-order characters of G_ab, written as exponents of
zeta_N on the free and torsion coordinates of :class:`AbelianStructure`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

from .exactalg import QQ, CycloNum, QCyclo, minors, rank, zeta
from .groebner import MPoly, torus_zero_set_empty, torus_zero_set_in_one
from .laurent import (AbGroupRingElem, DeltaVariety, LaurentPoly, delta_variety_in_one, evaluate,
                      gcd_list, normalize_unit)
from .presentation import AbelianStructure, FreeWord, GroupPresentation


# ---------------------------------------------------------------------------
# Free group ring


class FreeGroupRingElem:
    """Finite Z-combination of reduced free words."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[FreeWord, int] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, w: FreeWord, c: int = 1) -> FreeGroupRingElem:
        return cls({w: c})

    def __add__(self, other: FreeGroupRingElem) -> FreeGroupRingElem:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return FreeGroupRingElem(out)

    def __sub__(self, other: FreeGroupRingElem) -> FreeGroupRingElem:
        return self + FreeGroupRingElem({w: -c for w, c in other.terms.items()})

    def __mul__(self, other: FreeGroupRingElem) -> FreeGroupRingElem:
        out: dict[FreeWord, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return FreeGroupRingElem(out)

    def __eq__(self, other):
        return isinstance(other, FreeGroupRingElem) and self.terms == other.terms

    def __repr__(self):
        return f"FreeGroupRingElem({self.terms})"


def fox_derive(w: FreeWord, j: int) -> FreeGroupRingElem:
    """Fox derivative of ``w`` with respect to generator ``j``.

    d(x_j)/dx_j = 1, d(x_j^-1)/dx_j = -x_j^-1, d(uv) = du + u dv.
    """
    out: dict[FreeWord, int] = {}
    prefix: list[tuple[int, int]] = []
    for g, e in w.letters:
        step = 1 if e > 0 else -1
        for _ in range(abs(e)):
            if g == j:
                if step > 0:
                    key = FreeWord.reduce(prefix)
                    out[key] = out.get(key, 0) + 1
                else:
                    key = FreeWord.reduce(prefix + [(g, -1)])
                    out[key] = out.get(key, 0) - 1
            prefix.append((g, step))
    return FreeGroupRingElem(out)


# ---------------------------------------------------------------------------
# Characters


@dataclass(frozen=True)
class Character:
    """rho(free coord i) = zeta_N^free[i], rho(torsion coord j) = zeta_N^torsion[j]."""

    level: int
    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(a % self.level for a in self.free))
        object.__setattr__(self, "torsion", tuple(a % self.level for a in self.torsion))

    def check(self, structure: AbelianStructure) -> None:
        if len(self.free) != structure.b1 or len(self.torsion) != len(structure.torsion):
            raise ValueError("character has the wrong shape for this group")
        for e, d in zip(self.torsion, structure.torsion):
            if (d * e) % self.level:
                raise ValueError(f"torsion exponent {e} is not of order dividing {d} at level {self.level}")

    @property
    def is_trivial(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def generator_exponents(self, structure: AbelianStructure) -> list[int]:
        """zeta_N exponents of rho on each presentation generator."""
        out = []
        for g in range(structure.ngens):
            k = sum(a * x for a, x in zip(self.free, structure.proj_free[g]))
            k += sum(a * x for a, x in zip(self.torsion, structure.proj_torsion[g]))
            out.append(k % self.level)
        return out

    def to_json(self):
        return {"level": self.level, "free": list(self.free), "torsion": list(self.torsion)}


def characters(structure: AbelianStructure, N: int) -> Iterator[Character]:
    """All characters of G_ab whose order divides N, at level N."""
    tors_choices = [[e for e in range(N) if (d * e) % N == 0] for d in structure.torsion]
    for free in product(range(N), repeat=structure.b1):
        for tors in product(*tors_choices):
            yield Character(N, free, tors)


# ---------------------------------------------------------------------------
# Alexander matrix


@dataclass(frozen=True)
class AlexanderMatrix:
    structure: AbelianStructure
    entries_ab: tuple[tuple[AbGroupRingElem, ...], ...]
    entries_free: tuple[tuple[LaurentPoly, ...], ...]
    ngens: int

    @property
    def nrows(self) -> int:
        return len(self.entries_ab)

    def evaluate(self, rho: Character) -> list[list]:
        return [[evaluate(e, rho) for e in row] for row in self.entries_ab]


def _word_image(structure: AbelianStructure, w: FreeWord) -> tuple[tuple[int, ...], tuple[int, ...]]:
    v = w.exponent_vector(structure.ngens)
    return structure.free_coords(v), structure.torsion_coords(v)


def abelianize_ring_elem(structure: AbelianStructure, x: FreeGroupRingElem) -> AbGroupRingElem:
    terms: dict = {}
    for w, c in x.terms.items():
        key = _word_image(structure, w)
        terms[key] = terms.get(key, 0) + c
    return AbGroupRingElem(structure, terms)


@lru_cache(maxsize=256)
def alexander_matrix(P: GroupPresentation) -> AlexanderMatrix:
    A = P.abelian
    rows_ab, rows_free = [], []
    for w in P.relators:
        row = [abelianize_ring_elem(A, fox_derive(w, j)) for j in range(P.ngens)]
        rows_ab.append(tuple(row))
        rows_free.append(tuple(e.free_projection() for e in row))
    return AlexanderMatrix(A, tuple(rows_ab), tuple(rows_free), P.ngens)


def _padded_free_matrix(P: GroupPresentation) -> list[list[LaurentPoly]]:
    M = alexander_matrix(P)
    n = M.structure.b1
    rows = [list(r) for r in M.entries_free]
    while len(rows) < P.ngens:
        rows.append([LaurentPoly(n) for _ in range(P.ngens)])
    return rows


@lru_cache(maxsize=256)
def _elementary_ideal_cached(P: GroupPresentation, k: int) -> tuple[LaurentPoly, ...]:
    n = P.abelian.b1
    m = P.ngens
    size = m - k
    if size <= 0:
        return (LaurentPoly.const(n, 1),)
    if size > m:
        return ()
    rows = _padded_free_matrix(P)
    seen: dict[LaurentPoly, None] = {}
    for d in minors(rows, size, LaurentPoly(n), LaurentPoly.const(n, 1)):
        if d:
            seen.setdefault(normalize_unit(d), None)
    return tuple(seen)


def elementary_ideal_gens(P: GroupPresentation, k: int) -> list[LaurentPoly]:
    """Generators (normalized, deduplicated) of E_k of the Alexander module."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return list(_elementary_ideal_cached(P, k))


def alexander_poly(P: GroupPresentation) -> LaurentPoly:
    """gcd of E_1, normalized; 0 for the zero ideal."""
    return gcd_list(elementary_ideal_gens(P, 1), P.abelian.b1)


# ---------------------------------------------------------------------------
# Twisted homology and scans


def twisted_h1(P: GroupPresentation, rho: Character) -> int:
    """dim H^1(G; C_rho) computed from the presentation 2-complex."""
    A = P.abelian
    rho.check(A)
    if rho.is_trivial:
        return A.b1
    if P.ngens == 0:
        return 0
    M = alexander_matrix(P)
    values = M.evaluate(rho)
    r = rank(values, QCyclo(rho.level)) if values else 0
    return P.ngens - 1 - r


def chain_condition_holds(P: GroupPresentation, rho: Character) -> bool:
    """Evaluated Fox matrix times the column (rho(x_j) - 1) vanishes."""
    M = alexander_matrix(P)
    col = [zeta(rho.level, k) - 1 for k in rho.generator_exponents(M.structure)]
    for row in M.evaluate(rho):
        acc = CycloNum.from_rational(rho.level, 0)
        for a, b in zip(row, col):
            acc = acc + a * b
        if acc:
            return False
    return True


def charvar_scan(P: GroupPresentation, N: int, kmax: int | None = None) -> list[tuple[Character, int]]:
    """Characters of order dividing N lying in V^1_1, with their depth.

    Depth is dim H^1(G; C_rho), truncated at ``kmax`` when given.
    """
    if N < 1:
        raise ValueError("level must be >= 1")
    out = []
    for rho in characters(P.abelian, N):
        h = twisted_h1(P, rho)
        if h >= 1:
            out.append((rho, h if kmax is None else min(h, kmax)))
    return out


def _identity_component_in_one(P: GroupPresentation) -> bool:
    n = P.abelian.b1
    if n == 0:
        return True
    E1 = elementary_ideal_gens(P, 1)
    if not E1:
        return False
    # V(E_1) contains V(Delta); a non-unit Delta already gives a point other than 1
    if delta_variety_in_one(gcd_list(E1, n)) is DeltaVariety.LARGER:
        return False
    gens = [MPoly.from_laurent(g.terms, n, QQ) for g in E1]
    return torus_zero_set_in_one(gens, n)


def _torsion_component_empty(P: GroupPresentation, tors: tuple[int, ...]) -> bool:
    A = P.abelian
    n, N, m = A.b1, A.exponent, P.ngens
    field = QCyclo(N)
    size = m - 1
    if size <= 0:
        return True
    M = alexander_matrix(P)
    rows = []
    for row in M.entries_ab:
        special = [e.specialize_torsion(tors, N) for e in row]
        # a row may be scaled by a monomial without changing the ideal of minors on the torus
        exps = [e for d in special for e in d]
        lo = [min(e[i] for e in exps) for i in range(n)] if exps else [0] * n
        rows.append([MPoly(n, field, {tuple(x - y for x, y in zip(e, lo)): c for e, c in d.items()})
                     for d in special])
    while len(rows) < m:
        rows.append([MPoly.zero(n, field) for _ in range(m)])
    mins = [d for d in minors(rows, size, MPoly.zero(n, field), MPoly.constant(n, field, 1)) if d]
    return torus_zero_set_empty(mins, n)


def v11_in_one(P: GroupPresentation) -> bool:
    """Decide whether V^1_1(G) lies in {1}, using E_1 and its torsion specializations.

    The identity component of the character group is tested with the torus
    containment test over Q; the component of each nontrivial torsion
    character must miss the torus entirely, over Q(zeta_N).
    """
    A = P.abelian
    if not _identity_component_in_one(P):
        return False
    if not A.torsion:
        return True
    for tors in product(*[[e for e in range(A.exponent) if (d * e) % A.exponent == 0] for d in A.torsion]):
        if any(tors) and not _torsion_component_empty(P, tors):
            return False
    return True
