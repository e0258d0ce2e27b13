"""Roots, centralizers and the zeta homomorphisms of Gamma_d."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoRoot, NotInCentralizer
from .group import (
    GroupElement,
    gen_a,
    invert,
    lift,
    multiply,
    power,
    project,
)

__all__ = [
    "RootDecomposition",
    "CentralizerDescription",
    "ZetaData",
    "root_exact",
    "max_root_mod_center",
    "centralizer",
    "zeta",
    "zeta_image",
    "extended_gcd",
    "bezout_bounded",
]


def root_exact(g: GroupElement, p: int) -> GroupElement:
    """The unique h with h^p = g; raises NoRoot when there is none.

    Roots are found level by level: root the image in Gamma_{d-1}, lift it
    with last exponent 0, and fix the last coordinate, which is possible
    exactly when the central discrepancy of the p-th power is divisible by p.
    """
    if p < 1:
        raise ValueError(f"root index must be positive, got {p}")
    if p == 1:
        return g
    if g.dim == 1:
        r, x = g.t_exp, g.a_exps[0]
        if r % p or x % p:
            raise NoRoot(f"{g} has no {p}-th root")
        return GroupElement(1, r // p, (x // p,))
    below = root_exact(project(g), p)
    # lift(below)^p = g * a_d^s
    s = power(lift(below), p).a_exps[-1] - g.a_exps[-1]
    if s % p:
        raise NoRoot(f"{g} has no {p}-th root")
    return lift(below, -s // p)


@dataclass(frozen=True)
class RootDecomposition:
    """``base^exponent * a_dim^central_offset``, exponent maximal, 0 <= offset < exponent."""

    base: GroupElement
    exponent: int
    central_offset: int

    def value(self) -> GroupElement:
        b = self.base
        return multiply(power(b, self.exponent), gen_a(b.dim, b.dim, self.central_offset))


def _divisors_desc(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return sorted(small + large, reverse=True)


def max_root_mod_center(g: GroupElement) -> RootDecomposition:
    """Write g = g_0^p a_d^r with p > 0 maximal and 0 <= r < p.

    Only the image of g_0 in Gamma_{d-1} is determined; the representative
    returned is the one that puts the central offset in [0, p).
    """
    if g.t_exp == 0:
        raise ValueError(f"{g} lies in the lattice subgroup; it has no maximal root mod the centre")
    n = abs(g.t_exp)
    sign = 1 if g.t_exp > 0 else -1
    if g.dim == 1:
        k, r = divmod(g.a_exps[0], n)
        return RootDecomposition(GroupElement(1, sign, (k,)), n, r)
    below_g = project(g)
    for p in _divisors_desc(n):
        try:
            below = root_exact(below_g, p)
        except NoRoot:
            continue
        offset = g.a_exps[-1] - power(lift(below), p).a_exps[-1]
        k, r = divmod(offset, p)
        return RootDecomposition(lift(below, k), p, r)
    raise AssertionError("p = 1 always yields a root")


@dataclass(frozen=True)
class CentralizerDescription:
    """One of: ``"full"`` (all of Gamma_d), ``"lattice"`` (A_d), or
    ``"rank-two"`` generated by ``generators = (g_0, a_d)``."""

    dim: int
    kind: str
    generators: tuple[GroupElement, ...] = ()

    def contains(self, x: GroupElement) -> bool:
        if self.kind == "full":
            return True
        if self.kind == "lattice":
            return x.t_exp == 0
        base = self.generators[0]
        if x.t_exp % base.t_exp:
            return False
        rest = multiply(x, power(base, -(x.t_exp // base.t_exp)))
        return rest.is_central()


def centralizer(g: GroupElement) -> CentralizerDescription:
    if g.dim == 1 or g.is_central():
        return CentralizerDescription(g.dim, "full")
    if g.in_lattice():
        return CentralizerDescription(g.dim, "lattice")
    rd = max_root_mod_center(g)
    return CentralizerDescription(g.dim, "rank-two", (rd.base, gen_a(g.dim, g.dim)))


def zeta(g: GroupElement, x: GroupElement, g_central: int = 0, x_central: int = 0) -> int:
    """zeta_g(x): the m with x~^-1 g~ x~ = g~ a_{d+1}^m after lifting to Gamma_{d+1}.

    ``g`` and ``x`` live in Gamma_d and must commute there. The optional
    central offsets pick other lifts; the answer does not depend on them.
    """
    if g.dim != x.dim:
        raise ValueError("dimension mismatch")
    if multiply(g, x) != multiply(x, g):
        raise NotInCentralizer(f"{x} does not commute with {g}")
    gl, xl = lift(g, g_central), lift(x, x_central)
    c = multiply(multiply(invert(gl), invert(xl)), multiply(gl, xl))
    assert c.is_central()
    return c.a_exps[-1]


@dataclass(frozen=True)
class ZetaData:
    """Image of zeta_g: generated by ``image_generator = q * e``."""

    base: GroupElement
    p: int
    q: int
    r: int
    e: int
    image_generator: int


def zeta_image(g: GroupElement) -> ZetaData:
    rd = max_root_mod_center(g)
    p, r, base = rd.exponent, rd.central_offset, rd.base
    q = base.t_exp
    e = math.gcd(p, r)
    last_inv = gen_a(g.dim, g.dim, -1)
    if zeta(g, last_inv) != p * q:
        raise AssertionError(f"zeta_g(a^-1) != pq for g = {g}")
    if zeta(g, base) != r * q:
        raise AssertionError(f"zeta_g(g_0) != rq for g = {g}")
    return ZetaData(base, p, q, r, e, q * e)


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, rem = divmod(a, b)
        a, b = b, rem
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def bezout_bounded(A: int, B: int) -> tuple[int, int]:
    """(lam, mu) with lam*A - mu*B = gcd(A, B), 0 < mu < A and 0 < lam <= B.

    Requires positive A != B with gcd(A, B) < A. The extended-gcd solution is
    slid along the solution line until mu is the least positive choice.
    """
    if A < 1 or B < 1:
        raise ValueError("A and B must be positive")
    if A == B:
        raise ValueError("A and B must differ")
    e, x, y = extended_gcd(A, B)
    if e == A:
        raise ValueError(f"{A} divides {B}; the case e = A is handled by the caller")
    mu = (-y) % (A // e)
    lam = (e + mu * B) // A
    assert lam * A - mu * B == e and 0 < mu < A and 0 < lam <= B
    return lam, mu
