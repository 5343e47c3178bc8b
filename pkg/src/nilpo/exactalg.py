"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`.  This module adds prime fields,
cyclotomic fields Q(zeta_N), integer Smith normal form, and exact
rank/kernel computations over any of those fields.

>>> z = zeta(4)
>>> z * z
CycloNum(4, (-1, 0))
>>> cyclotomic_polynomial(6)
(1, -1, 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Any, Callable, Sequence

Rat = Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def euler_phi(n: int) -> int:
    result, k, p = n, n, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


# ---------------------------------------------------------------------------
# Prime fields


@dataclass(frozen=True, slots=True)
class ModP:
    """Element of the prime field F_p."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> ModP:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return ModP(other, self.p)
        if isinstance(other, Fraction):
            return ModP(other.numerator, self.p) / ModP(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value - o.value, self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModP(self.value * pow(o.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (1 / self) ** (-k)
        return ModP(pow(self.value, k, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"{self.value} mod {self.p}"


# ---------------------------------------------------------------------------
# Cyclotomic fields


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _divide_monic(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _divide_monic(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for i, b in enumerate(den):
                num[k - dd + i] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("inexact cyclotomic division")
    return quot


def _reduce_mod_cyclo(coeffs: list, n: int) -> tuple:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[k]
        if c:
            for i in range(deg):
                coeffs[k - deg + i] -= c * phi[i]
        coeffs[k] = 0
    coeffs = coeffs[:deg] + [0] * (deg - len(coeffs))
    return tuple(Fraction(c) for c in coeffs)


class CycloNum:
    """Element of Q(zeta_N), stored as a residue modulo Phi_N.

    ``coeffs[k]`` is the coefficient of zeta_N^k, for k < phi(N).
    """

    __slots__ = ("level", "coeffs", "_hash")

    def __init__(self, level: int, coeffs: Sequence):
        self.level = level
        if len(coeffs) == euler_phi(level) and all(type(c) is Fraction for c in coeffs):
            self.coeffs = tuple(coeffs)
        else:
            self.coeffs = _reduce_mod_cyclo(coeffs, level)
        self._hash = None

    @classmethod
    def from_rational(cls, level: int, q) -> CycloNum:
        return cls(level, [Fraction(q)] + [Fraction(0)] * (euler_phi(level) - 1))

    def _coerce(self, other) -> CycloNum:
        if isinstance(other, CycloNum):
            if other.level != self.level:
                raise ValueError(f"mixing levels {self.level} and {other.level}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(self.level, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloNum(self.level, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.level, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloNum(self.level, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum(self.level, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycloNum(self.level, _reduce_mod_cyclo(prod, self.level))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta)")
            return CycloNum(self.level, tuple(a / other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * cyclo_inverse(o)

    def __rtruediv__(self, other):
        return self._coerce(other) * cyclo_inverse(self)

    def __pow__(self, k: int):
        if k < 0:
            return cyclo_inverse(self) ** (-k)
        result = CycloNum.from_rational(self.level, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.level == other.level and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.level, self.coeffs))
        return self._hash

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs)
        if len(self.coeffs) == 1:
            shown += ","
        return f"CycloNum({self.level}, ({shown}))"


def zeta(n: int, k: int = 1) -> CycloNum:
    """zeta_n ** k as an element of Q(zeta_n)."""
    k %= n
    coeffs = [Fraction(0)] * (k + 1)
    coeffs[k] = Fraction(1)
    return CycloNum(n, coeffs)


def _poly_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_poly_trim(a)) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
    return q, a


def cyclo_inverse(a: CycloNum) -> CycloNum:
    """Multiplicative inverse in Q(zeta_N), via extended Euclid against Phi_N."""
    if not a:
        raise ZeroDivisionError("zero has no inverse")
    r0 = [Fraction(c) for c in cyclotomic_polynomial(a.level)]
    r1 = _poly_trim(list(a.coeffs))
    s0: list = [Fraction(0)]
    s1: list = [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        s = _poly_sub(s0, _poly_mul(q, s1))
        r0, r1, s0, s1 = r1, _poly_trim(r), s1, s
    # r1 is a nonzero constant because Phi_N is irreducible
    c = r1[0]
    return CycloNum(a.level, [x / c for x in s1])


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


# ---------------------------------------------------------------------------
# Field tags


@dataclass(frozen=True)
class FieldTag:
    """One of Q, F_p or Q(zeta_N)."""

    kind: str
    param: int = 0

    def __post_init__(self):
        if self.kind == "Fp" and not is_prime(self.param):
            raise ValueError(f"F_{self.param}: {self.param} is not prime")
        if self.kind == "QCyclo" and self.param < 1:
            raise ValueError("cyclotomic level must be >= 1")
        if self.kind not in ("Q", "Fp", "QCyclo"):
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return self.param if self.kind == "Fp" else 0

    def __call__(self, x) -> Any:
        if self.kind == "Q":
            if isinstance(x, CycloNum):
                raise TypeError("cannot coerce a cyclotomic number into Q")
            return Fraction(x)
        if self.kind == "Fp":
            if isinstance(x, ModP):
                return x
            if isinstance(x, Fraction):
                return ModP(x.numerator, self.param) / ModP(x.denominator, self.param)
            return ModP(x, self.param)
        if isinstance(x, CycloNum):
            if x.level != self.param:
                raise ValueError("level mismatch")
            return x
        return CycloNum.from_rational(self.param, x)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __str__(self):
        if self.kind == "Q":
            return "Q"
        if self.kind == "Fp":
            return f"F{self.param}"
        return f"Q(zeta{self.param})"


QQ = FieldTag("Q")


def GF(p: int) -> FieldTag:
    return FieldTag("Fp", p)


def QCyclo(n: int) -> FieldTag:
    return FieldTag("QCyclo", n)


def field_for_characteristic(p: int) -> FieldTag:
    return QQ if p == 0 else GF(p)


# ---------------------------------------------------------------------------
# Linear algebra over fields


def rank_kernel(A: Sequence[Sequence], field: FieldTag, ncols: int | None = None):
    """Rank and a kernel basis of ``A`` acting on column vectors.

    Returns ``(rank, kernel)`` where ``kernel`` is a list of vectors ``v``
    with ``A v = 0``; ``rank + len(kernel)`` equals the number of columns.
    """
    rows = [[field(x) for x in row] for row in A]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = _rref_inplace(rows, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    kernel = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        kernel.append(v)
    return len(pivots), kernel


def rank(A: Sequence[Sequence], field: FieldTag) -> int:
    rows = [[field(x) for x in row] for row in A]
    ncols = len(rows[0]) if rows else 0
    return len(_rref_inplace(rows, ncols))


def _rref_inplace(rows: list[list], ncols: int) -> list[int]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                pr = rows[r]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    del rows[r:]
    return pivots


def rref(A: Sequence[Sequence], field: FieldTag) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows = [[field(x) for x in row] for row in A]
    ncols = len(rows[0]) if rows else 0
    pivots = _rref_inplace(rows, ncols)
    return rows, pivots


def bareiss_rank(A: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    M = [list(map(int, row)) for row in A]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
        if r == nrows:
            break
    return r


def bareiss_det(A: Sequence[Sequence[int]]) -> int:
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def ring_det(M: Sequence[Sequence], zero, one):
    """Division-free determinant over any commutative ring.

    Expansion over column subsets (Laplace along successive rows with
    memoisation), so no exact division is needed.  Intended for the small
    minors of Fox matrices.
    """
    k = len(M)
    if k == 0:
        return one
    cols = range(len(M[0]))
    # table[S] = determinant of rows 0..|S|-1 restricted to columns S
    table: dict[tuple[int, ...], Any] = {(): one}
    for r in range(k):
        nxt: dict[tuple[int, ...], Any] = {}
        for S, val in table.items():
            if not val:
                continue
            for c in cols:
                if c in S:
                    continue
                entry = M[r][c]
                if not entry:
                    continue
                # sign of inserting column c into sorted S at position r
                inversions = sum(1 for s in S if s > c)
                key = tuple(sorted(S + (c,)))
                term = val * entry
                if inversions % 2:
                    term = -term
                nxt[key] = nxt[key] + term if key in nxt else term
        table = nxt
    full = tuple(cols) if len(M[0]) == k else None
    if full is None:
        raise ValueError("ring_det needs a square matrix")
    return table.get(full, zero)


def minors(M: Sequence[Sequence], size: int, zero, one) -> list:
    """All ``size x size`` minors of ``M`` (zero ones included)."""
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    out = []
    for rows in combinations(range(nrows), size):
        for cols in combinations(range(ncols), size):
            sub = [[M[r][c] for c in cols] for r in rows]
            out.append(ring_det(sub, zero, one))
    return out


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``A = U * D * V`` with unimodular ``U``, ``V`` and diagonal ``D``.

    ``P`` and ``Q`` are the inverses of ``U`` and ``V``, so ``P A Q = D``.
    """

    U: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    P: tuple[tuple[int, ...], ...]
    Q: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SmithDecomposition:
    """Smith normal form by elementary operations, pivoting on least |entry|."""
    D = [list(map(int, row)) for row in A]
    s = len(D)
    m = len(D[0]) if s else (ncols or 0)
    P, Pinv = _identity(s), _identity(s)  # P A Q = D ; Pinv = U
    Q, Qinv = _identity(m), _identity(m)  # Qinv = V

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        P[i], P[j] = P[j], P[i]
        for row in Pinv:
            row[i], row[j] = row[j], row[i]

    def row_addmul(i, j, k):  # row_i += k row_j
        D[i] = [a + k * b for a, b in zip(D[i], D[j])]
        P[i] = [a + k * b for a, b in zip(P[i], P[j])]
        for row in Pinv:  # U <- U E^-1 : col_j -= k col_i
            row[j] -= k * row[i]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        P[i] = [-a for a in P[i]]
        for row in Pinv:
            row[i] = -row[i]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]
        Qinv[i], Qinv[j] = Qinv[j], Qinv[i]

    def col_addmul(i, j, k):  # col_i += k col_j
        for row in D:
            row[i] += k * row[j]
        for row in Q:
            row[i] += k * row[j]
        # V <- F^-1 V : row_j -= k row_i
        Qinv[j] = [a - k * b for a, b in zip(Qinv[j], Qinv[i])]

    t = 0
    while t < min(s, m):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, s) for j in range(t, m) if D[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            done = True
            for i in range(t + 1, s):
                if D[i][t]:
                    row_addmul(i, t, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, m):
                if D[t][j]:
                    col_addmul(j, t, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, s) for j in range(t + 1, m)
                            if D[i][j] % D[t][t]), None)
                if bad is None:
                    break
                row_addmul(t, bad[0], 1)
                continue
            # move the smallest remaining entry in row/col t to the pivot
            cands = [(abs(D[i][t]), i, t) for i in range(t, s) if D[i][t]]
            cands += [(abs(D[t][j]), t, j) for j in range(t, m) if D[t][j]]
            _, pi, pj = min(cands)
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
        if D[t][t] < 0:
            row_neg(t)
        t += 1

    def freeze(M):
        return tuple(tuple(r) for r in M)

    return SmithDecomposition(U=freeze(Pinv), D=freeze(D), V=freeze(Qinv), P=freeze(P), Q=freeze(Q))


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), 0) for j in range(ncols)]
            for i in range(len(A))]


def content(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g


def transpose(A: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def map_matrix(A: Sequence[Sequence], f: Callable) -> list[list]:
    return [[f(x) for x in row] for row in A]
