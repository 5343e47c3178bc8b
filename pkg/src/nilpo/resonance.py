"""Cup products on the presentation 2-complex and degree-one resonance.

H^1 is the space of cocycles a in Q^m with R a = 0, R the relator
exponent matrix; H^2 is Q^s modulo the column space of R.  The cup product
of a and b evaluated on the 2-cell of a relator w uses the antisymmetrized
degree-two Magnus coefficients of w.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactalg import QQ, minors, rank, rank_kernel, transpose
from .groebner import MPoly
from .presentation import FreeWord, GroupPresentation


def magnus_degree2(w: FreeWord, m: int) -> list[list[int]]:
    """mu[i][j] = coefficient of X_i X_j in the image of w under x -> 1 + X."""
    lin = [0] * m
    quad = [[0] * m for _ in range(m)]
    for g, e in w.letters:
        # (1 + X_g)^e = 1 + e X_g + C(e, 2) X_g^2 + ...
        for i in range(m):
            quad[i][g] += lin[i] * e
        quad[g][g] += e * (e - 1) // 2
        lin[g] += e
    return quad


@dataclass(frozen=True)
class CupStructure:
    ngens: int
    b1: int
    h1_basis: tuple[tuple[Fraction, ...], ...]
    pairing: tuple[tuple[tuple[int, ...], ...], ...]  # one antisymmetric m x m matrix per relator
    coboundary: tuple[tuple[int, ...], ...]  # s x m exponent matrix
    rank_mu: int
    dim_K: int

    def cup(self, a: Sequence, b: Sequence) -> list[Fraction]:
        """Cochain representing a cup b, one value per relator."""
        m = self.ngens
        out = []
        for A in self.pairing:
            out.append(sum(Fraction(a[i]) * b[j] * A[i][j] for i in range(m) for j in range(m) if A[i][j]))
        return out

    def is_cocycle(self, z: Sequence) -> bool:
        return all(sum(Fraction(r) * x for r, x in zip(row, z)) == 0 for row in self.coboundary)

    def h2_rank(self, cochains: list[list[Fraction]]) -> int:
        """Dimension of the span of the classes of ``cochains`` in H^2."""
        R = [list(map(Fraction, col)) for col in transpose(self.coboundary, self.ngens)]
        base = rank(R, QQ) if R and self.coboundary else 0
        both = R + cochains
        return (rank(both, QQ) if both and both[0] else 0) - base


def _identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def cup_structure(P: GroupPresentation) -> CupStructure:
    m = P.ngens
    R = P.exponent_matrix()
    h1 = rank_kernel(R, QQ, ncols=m)[1] if R else _identity(m)
    b1 = len(h1)
    pairing = []
    for w in P.relators:
        mu = magnus_degree2(w, m)
        pairing.append(tuple(tuple(mu[i][j] - mu[j][i] for j in range(m)) for i in range(m)))
    cs = CupStructure(m, b1, tuple(tuple(v) for v in h1), tuple(pairing),
                      tuple(tuple(r) for r in R), 0, 0)
    pair_vectors = [cs.cup(h1[k], h1[l]) for k, l in combinations(range(b1), 2)]
    rmu = cs.h2_rank(pair_vectors) if pair_vectors and P.relators else 0
    total = b1 * (b1 - 1) // 2
    return CupStructure(m, b1, cs.h1_basis, cs.pairing, cs.coboundary, rmu, total - rmu)


def resonance_depth(CS: CupStructure, z: Sequence) -> int:
    """dim H^1(H^*, z cup -) for a cocycle z (in generator coordinates)."""
    if len(z) != CS.ngens:
        raise ValueError("z must have one entry per generator")
    if not CS.is_cocycle(z):
        raise ValueError("z is not a cocycle")
    if not any(z):
        return CS.b1
    images = [CS.cup(z, h) for h in CS.h1_basis]
    r = CS.h2_rank(images) if images and CS.pairing else 0
    return CS.b1 - r - 1


def h1_coordinates_to_cocycle(CS: CupStructure, coords: Sequence) -> list[Fraction]:
    out = [Fraction(0)] * CS.ngens
    for c, h in zip(coords, CS.h1_basis):
        out = [a + Fraction(c) * b for a, b in zip(out, h)]
    return out


def resonance_equations(CS: CupStructure) -> list[MPoly]:
    """Equations in H^1 coordinates for R^1_1 away from the origin (b1 <= 3).

    They are the (b1 - 1)-minors of the matrix of z cup - into H^2, whose
    entries are linear in z.  An empty list means R^1_1 is all of H^1.
    """
    n = CS.b1
    if n > 3:
        raise ValueError("equations are produced for b1 <= 3 only")
    s = len(CS.pairing)
    # functionals on Q^s vanishing on the coboundaries give coordinates on H^2
    Rt = transpose(CS.coboundary, CS.ngens)
    funcs = rank_kernel(Rt, QQ, ncols=s)[1] if s and CS.ngens else _identity(s)
    zero, one = MPoly.zero(n, QQ), MPoly.constant(n, QQ, 1)
    M = []
    for y in funcs:
        row = []
        for l in range(n):
            entry = zero
            for k in range(n):
                v = CS.cup(CS.h1_basis[k], CS.h1_basis[l])
                c = sum(a * b for a, b in zip(y, v))
                if c:
                    entry = entry + MPoly.var(n, QQ, k) * c
            row.append(entry)
        M.append(row)
    size = n - 1
    if size <= 0:
        return [one]
    if len(M) < size:
        return []
    out: list[MPoly] = []
    for d in minors(M, size, zero, one):
        if d:
            d = d.monic()
            if d not in out:
                out.append(d)
    return out


def duality_check(P: GroupPresentation, D: int = 5) -> bool:
    """dim K (kernel of the cup product) equals dim gr^2 of the Malcev algebra."""
    from .malcev import group_gr_dims

    if D < 2:
        raise ValueError("need D >= 2")
    return cup_structure(P).dim_K == group_gr_dims(P, D)[1]


__all__ = [
    "CupStructure", "cup_structure", "resonance_depth", "resonance_equations", "duality_check",
    "magnus_degree2", "h1_coordinates_to_cocycle",
]
