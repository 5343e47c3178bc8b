"""Finite group presentations: free words, the text format, abelianization.

File format, one directive per line (``/`` also separates directives)::

    group heisenberg
    gens x y
    rel [x,[x,y]]
    rel [y,[x,y]]
    tags nilpotent torsion-free

Words are juxtapositions of terms ``atom`` or ``atom^k``, where an atom is
a generator name, a parenthesised word, or a commutator ``[u,v]`` which
expands to ``u v u^-1 v^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .exactalg import bareiss_det, smith_normal_form, SmithDecomposition

Letter = tuple[int, int]


# ---------------------------------------------------------------------------
# Free words


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word, as syllables ``(generator, nonzero exponent)``."""

    letters: tuple[Letter, ...] = ()

    @classmethod
    def reduce(cls, syllables: Iterable[Letter]) -> FreeWord:
        stack: list[list[int]] = []
        for g, e in syllables:
            if e == 0:
                continue
            if stack and stack[-1][0] == g:
                stack[-1][1] += e
                if stack[-1][1] == 0:
                    stack.pop()
            else:
                stack.append([g, e])
        return cls(tuple((g, e) for g, e in stack))

    @classmethod
    def gen(cls, g: int, e: int = 1) -> FreeWord:
        return cls(((g, e),)) if e else cls()

    @classmethod
    def from_signed(cls, letters: Iterable[int]) -> FreeWord:
        """From a letter list where ``+(g+1)`` is ``x_g`` and ``-(g+1)`` its inverse."""
        return cls.reduce((abs(a) - 1, 1 if a > 0 else -1) for a in letters)

    def signed(self) -> list[int]:
        out = []
        for g, e in self.letters:
            out.extend([(g + 1) if e > 0 else -(g + 1)] * abs(e))
        return out

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord.reduce(self.letters + other.letters)

    def inverse(self) -> FreeWord:
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> FreeWord:
        base = self if k >= 0 else self.inverse()
        return FreeWord.reduce(base.letters * abs(k))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def exponent_vector(self, m: int) -> list[int]:
        v = [0] * m
        for g, e in self.letters:
            v[g] += e
        return v

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


# ---------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class GroupPresentation:
    name: str
    generators: tuple[str, ...]
    relators: tuple[FreeWord, ...]
    tags: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        m = len(self.generators)
        for w in self.relators:
            if w.max_generator() >= m:
                raise ValueError(f"relator uses generator index {w.max_generator()} >= {m}")
            if w != FreeWord.reduce(w.letters):
                raise ValueError("relators must be freely reduced")
            if not w:
                raise ValueError("identity relators are not stored")

    @classmethod
    def make(cls, name: str, generators: Sequence[str], relators: Iterable[FreeWord],
             tags: Iterable[str] = ()) -> GroupPresentation:
        """Build a presentation, reducing relators and dropping trivial ones."""
        rels = tuple(w for w in (FreeWord.reduce(r.letters) for r in relators) if w)
        return cls(name, tuple(generators), rels, frozenset(tags))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def nrels(self) -> int:
        return len(self.relators)

    @property
    def deficiency(self) -> int:
        return self.ngens - self.nrels

    def exponent_matrix(self) -> list[list[int]]:
        return [w.exponent_vector(self.ngens) for w in self.relators]

    def format_word(self, w: FreeWord) -> str:
        if not w:
            return "1"
        parts = []
        for g, e in w.letters:
            name = self.generators[g]
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def to_text(self) -> str:
        lines = [f"group {self.name}", "gens " + " ".join(self.generators)]
        lines += [f"rel {self.format_word(w)}" for w in self.relators]
        if self.tags:
            lines.append("tags " + " ".join(sorted(self.tags)))
        return "\n".join(lines) + "\n"

    @cached_property
    def abelian(self) -> AbelianStructure:
        return abelianize(self)


# ---------------------------------------------------------------------------
# Parsing


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s*(?:(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<sym>[\^()\[\],]))")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*$")


class _WordParser:
    def __init__(self, text: str, gens: dict[str, int], line: int, col0: int):
        self.text, self.gens, self.line, self.col0 = text, gens, line, col0
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        while self.pos < len(text):
            if text[self.pos:].strip() == "":
                break
            mt = _TOKEN.match(text, self.pos)
            if not mt or mt.end() == self.pos:
                start = len(text[self.pos:]) - len(text[self.pos:].lstrip()) + self.pos
                self.fail(f"unexpected character {text[start]!r}", start)
            kind = mt.lastgroup
            self.tokens.append((kind, mt.group(kind), mt.start(kind)))
            self.pos = mt.end()
        self.i = 0

    def fail(self, msg: str, offset: int | None = None):
        if offset is None:
            offset = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise PresentationSyntaxError(msg, self.line, self.col0 + offset + 1)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def expect(self, sym: str):
        tok = self.peek()
        if tok is None or tok[1] != sym:
            self.fail(f"expected {sym!r}")
        self.i += 1

    def parse(self) -> FreeWord:
        if not self.tokens:
            self.fail("empty word")
        w = self.word()
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()[1]!r}")
        return w

    def word(self) -> FreeWord:
        w = FreeWord()
        count = 0
        while True:
            tok = self.peek()
            if tok is None or tok[1] in (")", "]", ","):
                break
            w = w * self.term()
            count += 1
        if count == 0:
            self.fail("expected a generator, '(' or '['")
        return w

    def term(self) -> FreeWord:
        a = self.atom()
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.i += 1
            tok = self.peek()
            if tok is None or tok[0] != "int":
                self.fail("expected an integer exponent")
            self.i += 1
            return a ** int(tok[1])
        return a

    def atom(self) -> FreeWord:
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of word")
        kind, val, off = tok
        if kind == "id":
            if val not in self.gens:
                self.fail(f"undeclared generator {val!r}")
            self.i += 1
            return FreeWord.gen(self.gens[val])
        if val == "(":
            self.i += 1
            w = self.word()
            self.expect(")")
            return w
        if val == "[":
            self.i += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return commutator(u, v)
        self.fail(f"unexpected {val!r}")


def parse_word(text: str, generators: Sequence[str]) -> FreeWord:
    return _WordParser(text, {g: i for i, g in enumerate(generators)}, 1, 0).parse()


def parse_presentation(text: str, default_name: str = "G") -> GroupPresentation:
    """Parse the presentation text format.  Trivial relators are dropped."""
    name = default_name
    gens: list[str] = []
    index: dict[str, int] = {}
    rels: list[FreeWord] = []
    tags: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for chunk in line.split("/"):
            col = offset
            offset += len(chunk) + 1
            stripped = chunk.strip()
            if not stripped:
                continue
            col += len(chunk) - len(chunk.lstrip())
            directive, _, rest = stripped.partition(" ")
            rest_col = col + len(directive) + 1
            rest = rest if rest else ""
            if directive == "group":
                if not rest.strip() or len(rest.split()) != 1:
                    raise PresentationSyntaxError("'group' takes one name", lineno, col + 1)
                name = rest.strip()
            elif directive == "gens":
                for mt in re.finditer(r"\S+", rest):
                    g = mt.group()
                    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
                        raise PresentationSyntaxError(f"bad generator name {g!r}", lineno,
                                                      rest_col + mt.start() + 1)
                    if g in index:
                        raise PresentationSyntaxError(f"duplicate generator {g!r}", lineno,
                                                      rest_col + mt.start() + 1)
                    index[g] = len(gens)
                    gens.append(g)
            elif directive == "rel":
                w = _WordParser(rest, index, lineno, rest_col).parse()
                if w:
                    rels.append(w)
            elif directive == "tags":
                for t in rest.split():
                    if not _IDENT.match(t):
                        raise PresentationSyntaxError(f"bad tag {t!r}", lineno, rest_col + 1)
                    tags.add(t)
            else:
                raise PresentationSyntaxError(f"unknown directive {directive!r}", lineno, col + 1)
    return GroupPresentation(name, tuple(gens), tuple(rels), frozenset(tags))


def load_presentation(path) -> GroupPresentation:
    from pathlib import Path

    p = Path(path)
    return parse_presentation(p.read_text(encoding="utf-8"), default_name=p.stem)


# ---------------------------------------------------------------------------
# Abelianization


@dataclass(frozen=True)
class AbelianStructure:
    """G_ab = Z^b1 + sum Z/d_j, with coordinate projections.

    ``proj_free`` is m x b1 and ``proj_torsion`` is m x len(torsion); a
    generator exponent vector ``v`` has free coordinates ``v @ proj_free``
    and torsion coordinates ``v @ proj_torsion`` (mod ``torsion[j]``).
    """

    b1: int
    torsion: tuple[int, ...]
    exponent_matrix: tuple[tuple[int, ...], ...]
    proj_free: tuple[tuple[int, ...], ...]
    proj_torsion: tuple[tuple[int, ...], ...]
    smith: SmithDecomposition

    @property
    def ngens(self) -> int:
        return len(self.proj_free)

    def free_coords(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(v[g] * self.proj_free[g][k] for g in range(len(v)))
                     for k in range(self.b1))

    def torsion_coords(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(v[g] * self.proj_torsion[g][k] for g in range(len(v))) % d
                     for k, d in enumerate(self.torsion))

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 if torsion-free)."""
        return self.torsion[-1] if self.torsion else 1


def abelianize(P: GroupPresentation) -> AbelianStructure:
    m = P.ngens
    R = P.exponent_matrix()
    snf = smith_normal_form(R, ncols=m)
    diag = snf.diagonal
    diag = diag + [0] * (m - len(diag))
    free_cols = [j for j in range(m) if diag[j] == 0]
    tors_cols = [j for j in range(m) if diag[j] > 1]
    Q = snf.Q
    proj_free = tuple(tuple(Q[g][j] for j in free_cols) for g in range(m))
    proj_tors = tuple(tuple(Q[g][j] % diag[j] for j in tors_cols) for g in range(m))
    return AbelianStructure(
        b1=len(free_cols),
        torsion=tuple(diag[j] for j in tors_cols),
        exponent_matrix=tuple(tuple(r) for r in R),
        proj_free=proj_free,
        proj_torsion=proj_tors,
        smith=snf,
    )


# ---------------------------------------------------------------------------
# Semidirect products A x|_alpha Z


@dataclass(frozen=True)
class NilpotentOfClassAtMost:
    c: int


@dataclass(frozen=True)
class NotNilpotent:
    pass


def _check_alpha(rank: int, torsion: Sequence[int], alpha: Sequence[Sequence[int]]):
    k = rank + len(torsion)
    if len(alpha) != k or any(len(row) != k for row in alpha):
        raise ValueError(f"alpha must be a {k}x{k} integer matrix")
    if any(d < 2 for d in torsion):
        raise ValueError("torsion orders must be >= 2")
    # images of torsion generators must be torsion of compatible order
    for j, d in enumerate(torsion):
        col = rank + j
        if any(alpha[i][col] for i in range(rank)):
            raise ValueError("alpha sends a torsion generator to an element of infinite order")
        for i, di in enumerate(torsion):
            if (d * alpha[rank + i][col]) % di:
                raise ValueError("alpha is not well defined on the torsion subgroup")
    free_block = [[alpha[i][j] for j in range(rank)] for i in range(rank)]
    if abs(bareiss_det(free_block)) != 1:
        raise ValueError("alpha is not invertible on the free part")
    if torsion:
        t = len(torsion)
        block = [[alpha[rank + i][rank + j] for j in range(t)] + [torsion[i] if i == j else 0 for j in range(t)]
                 for i in range(t)]
        snf = smith_normal_form(block)
        if any(d != 1 for d in snf.diagonal):
            raise ValueError("alpha is not invertible on the torsion subgroup")


def build_semidirect(rank: int, torsion: Sequence[int], alpha: Sequence[Sequence[int]],
                     name: str | None = None) -> GroupPresentation:
    """Presentation of ``A x|_alpha Z`` with ``A = Z^rank + sum Z/d_j``.

    ``alpha`` acts on column vectors: ``alpha[i][j]`` is the coefficient of
    generator ``i`` in the image of generator ``j``.  Generators are the
    basis of A followed by ``t``; relators are the orders of the torsion
    generators, the commutators of A, and ``t g t^-1 alpha(g)^-1``.
    """
    torsion = list(torsion)
    _check_alpha(rank, torsion, alpha)
    k = rank + len(torsion)
    names = ["a"] if k == 1 else [f"a{i + 1}" for i in range(k)]
    t = k
    gen = FreeWord.gen
    rels: list[FreeWord] = []
    for j, d in enumerate(torsion):
        rels.append(gen(rank + j, d))
    for i in range(k):
        for j in range(i + 1, k):
            rels.append(commutator(gen(i), gen(j)))
    for j in range(k):
        image = FreeWord.reduce((i, alpha[i][j]) for i in range(k))
        rels.append(gen(t) * gen(j) * gen(t, -1) * image.inverse())
    return GroupPresentation.make(name or "semidirect", names + ["t"], rels)


def _omega(n: int) -> int:
    count, p = 0, 2
    while p * p <= n:
        while n % p == 0:
            n //= p
            count += 1
        p += 1
    return count + (1 if n > 1 else 0)


def alpha_nilpotence(rank: int, torsion: Sequence[int], alpha: Sequence[Sequence[int]]):
    """Smallest c with (alpha - id)^c = 0 on A, or :class:`NotNilpotent`."""
    torsion = list(torsion)
    _check_alpha(rank, torsion, alpha)
    k = rank + len(torsion)
    beta = [[alpha[i][j] - (i == j) for j in range(k)] for i in range(k)]
    order = 1
    for d in torsion:
        order *= d
    bound = rank + _omega(order) + 1

    def is_zero_on_A(M) -> bool:
        for j in range(k):
            for i in range(k):
                v = M[i][j]
                if i < rank:
                    if v:
                        return False
                elif v % torsion[i - rank]:
                    return False
        return True

    power = beta
    for c in range(1, bound + 1):
        if is_zero_on_A(power):
            return NilpotentOfClassAtMost(c)
        power = [[sum(beta[i][l] * power[l][j] for l in range(k)) for j in range(k)] for i in range(k)]
        # keep torsion rows reduced so entries stay small
        for i in range(rank, k):
            power[i] = [x % torsion[i - rank] for x in power[i]]
    return NotNilpotent()
