"""Exact arithmetic in the model filiform groups Gamma_d = Z^d x|_phi Z.

Elements are stored in the normal form ``t^r a_1^p_1 ... a_d^p_d`` and
multiplied by collection: ``t^{-1} a_i t = a_i a_{i+1}``, so pushing ``t^s``
left across an exponent vector applies ``phi^s``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "GroupElement",
    "Word",
    "PhiMatrix",
    "WordParseError",
    "binom",
    "phi_pow",
    "phi_apply",
    "epsilon",
    "epsilon_bound",
    "identity",
    "gen_t",
    "gen_a",
    "multiply",
    "invert",
    "power",
    "commutator",
    "eval_word",
    "project",
    "lift",
    "parse_element",
    "format_element",
    "parse_word",
    "format_word",
]


def binom(m: int, k: int) -> int:
    """Generalized binomial coefficient C(m, k) for any integer m and k >= 0."""
    if k < 0:
        return 0
    if m >= 0:
        return math.comb(m, k)
    return (-1) ** k * math.comb(-m + k - 1, k)


@lru_cache(maxsize=4096)
def _binom_row(m: int, length: int) -> tuple[int, ...]:
    return tuple(binom(m, k) for k in range(length))


def phi_apply(dim: int, m: int, vec: Sequence[int]) -> tuple[int, ...]:
    """Apply phi^m to an exponent vector without building the matrix."""
    if m == 0:
        return tuple(vec)
    if m == 1:
        return (vec[0],) + tuple(vec[j] + vec[j - 1] for j in range(1, dim))
    if m == -1:
        out = [vec[0]]
        for j in range(1, dim):
            out.append(vec[j] - out[-1])
        return tuple(out)
    row = _binom_row(m, dim)
    return tuple(
        sum(row[j - k] * vec[k] for k in range(j + 1) if vec[k]) for j in range(dim)
    )


@dataclass(frozen=True)
class PhiMatrix:
    """The matrix of phi^power acting on exponent column vectors.

    Entry ``(j, i)`` (0-based) is ``C(power, j - i)``; lower unitriangular.
    """

    dim: int
    power: int
    entries: tuple[tuple[int, ...], ...]

    def __matmul__(self, other: "PhiMatrix") -> "PhiMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        n = self.dim
        rows = tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        return PhiMatrix(n, self.power + other.power, rows)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def bottom_row(self) -> tuple[int, ...]:
        return self.entries[-1]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def phi_pow(dim: int, m: int) -> PhiMatrix:
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    row = _binom_row(m, dim)
    entries = tuple(
        tuple(row[j - i] if i <= j else 0 for i in range(dim)) for j in range(dim)
    )
    return PhiMatrix(dim, m, entries)


def epsilon(dim: int, i: int, m: int) -> int:
    """Bottom-row entry of phi^m in column i (1-based), i.e. C(m, dim - i).

    This is the power of a_d picked up when ``t^{-m} a_i t^m`` is computed in
    Gamma_dim instead of Gamma_{dim-1}.
    """
    if not 1 <= i <= dim - 1:
        raise IndexError(f"column index {i} outside 1..{dim - 1}")
    return binom(m, dim - i)


def epsilon_bound(dim: int) -> int:
    """A constant e_d with |epsilon(i, m)| <= e_d |m|^(d-i) for every m, i.

    Follows from |C(m, k)| <= (|m| + k - 1)^k / k! <= |m|^k k^k / k! for m != 0.
    """
    if dim <= 1:
        return 1
    return max(-(-k**k // math.factorial(k)) for k in range(1, dim))


@dataclass(frozen=True)
class GroupElement:
    """Normal form ``t^t_exp a_1^a_exps[0] ... a_dim^a_exps[-1]`` in Gamma_dim."""

    dim: int
    t_exp: int
    a_exps: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if not isinstance(self.a_exps, tuple):
            object.__setattr__(self, "a_exps", tuple(self.a_exps))
        if len(self.a_exps) != self.dim:
            raise ValueError(f"expected {self.dim} a-exponents, got {len(self.a_exps)}")

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "GroupElement":
        """Build from ``(r, p_1, ..., p_d)``."""
        return cls(len(coords) - 1, coords[0], tuple(coords[1:]))

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.t_exp,) + self.a_exps

    def is_identity(self) -> bool:
        return self.t_exp == 0 and not any(self.a_exps)

    def in_lattice(self) -> bool:
        """Membership in the abelian normal subgroup A_d = <a_1, ..., a_d>."""
        return self.t_exp == 0

    def is_central(self) -> bool:
        return self.t_exp == 0 and not any(self.a_exps[:-1])

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __pow__(self, n: int) -> "GroupElement":
        return power(self, n)

    def inverse(self) -> "GroupElement":
        return invert(self)

    def __str__(self) -> str:
        return format_element(self)


def identity(dim: int) -> GroupElement:
    return GroupElement(dim, 0, (0,) * dim)


def gen_t(dim: int, k: int = 1) -> GroupElement:
    return GroupElement(dim, k, (0,) * dim)


def gen_a(dim: int, i: int, k: int = 1) -> GroupElement:
    """``a_i^k`` in Gamma_dim (i is 1-based)."""
    if not 1 <= i <= dim:
        raise IndexError(f"generator a_{i} not in Gamma_{dim}")
    exps = [0] * dim
    exps[i - 1] = k
    return GroupElement(dim, 0, tuple(exps))


def _check_dims(g: GroupElement, h: GroupElement) -> None:
    if g.dim != h.dim:
        raise ValueError(f"dimension mismatch: {g.dim} vs {h.dim}")


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    _check_dims(g, h)
    moved = phi_apply(g.dim, h.t_exp, g.a_exps)
    return GroupElement(g.dim, g.t_exp + h.t_exp, tuple(x + y for x, y in zip(moved, h.a_exps)))


def invert(g: GroupElement) -> GroupElement:
    back = phi_apply(g.dim, -g.t_exp, g.a_exps)
    return GroupElement(g.dim, -g.t_exp, tuple(-x for x in back))


def power(g: GroupElement, n: int) -> GroupElement:
    if n < 0:
        g, n = invert(g), -n
    result = identity(g.dim)
    base = g
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """``[g, h] = g^-1 h^-1 g h``."""
    return multiply(multiply(invert(g), invert(h)), multiply(g, h))


def project(g: GroupElement) -> GroupElement:
    """Image in Gamma_{d-1} = Gamma_d / <a_d>."""
    if g.dim < 2:
        raise ValueError("cannot project Gamma_1: it has no central quotient of this family")
    return GroupElement(g.dim - 1, g.t_exp, g.a_exps[:-1])


def lift(g: GroupElement, central: int = 0) -> GroupElement:
    """Section Gamma_{d-1} -> Gamma_d with last exponent ``central``."""
    return GroupElement(g.dim + 1, g.t_exp, g.a_exps + (central,))


# --- words -------------------------------------------------------------------

def _merge(syllables: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word over ``t, a_1, ..., a_dim`` and inverses.

    Stored run-length encoded as ``(generator, exponent)`` syllables, where
    generator 0 is ``t`` and ``i >= 1`` is ``a_i``; the length counts letters.
    """

    dim: int
    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        for gen, _ in self.syllables:
            if not 0 <= gen <= self.dim:
                raise ValueError(f"generator index {gen} outside Gamma_{self.dim}")
        object.__setattr__(self, "syllables", _merge(self.syllables))

    @classmethod
    def from_letters(cls, dim: int, letters: Iterable[tuple[int, int]]) -> "Word":
        return cls(dim, tuple((gen, sign) for gen, sign in letters))

    @property
    def letters(self) -> list[tuple[int, int]]:
        out = []
        for gen, exp in self.syllables:
            sign = 1 if exp > 0 else -1
            out.extend([(gen, sign)] * abs(exp))
        return out

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __add__(self, other: "Word") -> "Word":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return Word(self.dim, self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(self.dim, tuple((g, -e) for g, e in reversed(self.syllables)))

    def lifted(self) -> "Word":
        """The same letters read in Gamma_{dim+1}."""
        return Word(self.dim + 1, self.syllables)

    def __str__(self) -> str:
        return format_word(self)


def eval_word(w: Word) -> GroupElement:
    dim = w.dim
    r = 0
    p = [0] * dim
    for gen, exp in w.syllables:
        if gen == 0:
            p = list(phi_apply(dim, exp, p))
            r += exp
        else:
            p[gen - 1] += exp
    return GroupElement(dim, r, tuple(p))


# --- text forms ----------------------------------------------------------------

class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\S+")
_LETTER = re.compile(r"([tT])|([aA])(\d+)$")


def parse_word(text: str, dim: int) -> Word:
    """Parse ``t T a1 A1 ...`` (uppercase = inverse), whitespace separated."""
    letters = []
    for match in _TOKEN.finditer(text):
        tok = match.group()
        m = _LETTER.fullmatch(tok)
        if m is None:
            raise WordParseError(f"bad letter {tok!r}", match.start())
        if m.group(1):
            gen, sign = 0, (1 if tok == "t" else -1)
        else:
            gen = int(m.group(3))
            sign = 1 if m.group(2) == "a" else -1
            if not 1 <= gen <= dim:
                raise WordParseError(f"generator {tok!r} not in Gamma_{dim}", match.start())
        letters.append((gen, sign))
    return Word.from_letters(dim, letters)


def format_word(w: Word) -> str:
    names = []
    for gen, sign in w.letters:
        if gen == 0:
            names.append("t" if sign > 0 else "T")
        else:
            names.append(("a" if sign > 0 else "A") + str(gen))
    return " ".join(names)


def format_element(g: GroupElement) -> str:
    return f"{g.dim}; {g.t_exp}; " + ",".join(str(x) for x in g.a_exps)


def parse_element(text: str, dim: int | None = None) -> GroupElement:
    """Parse ``d; r; p1,...,pd``."""
    parts = [s.strip() for s in text.split(";")]
    if len(parts) != 3:
        raise ValueError(f"element must look like 'd; r; p1,...,pd', got {text!r}")
    try:
        d = int(parts[0])
        r = int(parts[1])
        ps = tuple(int(x) for x in parts[2].split(",")) if parts[2] else ()
    except ValueError as exc:
        raise ValueError(f"non-integer field in element {text!r}") from exc
    if dim is not None and d != dim:
        raise ValueError(f"element has dimension {d}, expected {dim}")
    return GroupElement(d, r, ps)
