"""Word metric on Gamma_d: exact distances, certified bounds, short words.

Upper bounds come from an explicit construction. Central powers ``a_d^p`` are
written as products of commutator gadgets

    w^-1 t^-k w t^k = a_d^(k^d)     where w = a_{d-1}^(k^(d-1)) in Gamma_{d-1},

one per part of a decomposition of ``p`` into d-th powers, and a general
element is a short word for its image in Gamma_{d-1} corrected by such a
central word.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ball import DEFAULT_MEMORY_CAP, get_ball
from .errors import DefiniteNegative
from .group import GroupElement, Word, epsilon_bound, eval_word, invert, multiply, project

__all__ = [
    "RadiusExceeded",
    "Constants",
    "iroot",
    "ceil_root",
    "size_lower_bound",
    "exact_distance",
    "waring_decompose",
    "waring_g",
    "central_power_word",
    "short_word",
    "compute_constants",
    "observed_part_counts",
    "WARING_DP_LIMIT",
]


class RadiusExceeded(DefiniteNegative):
    """The distance is larger than the searched radius.

    ``lower_bound`` is a verified lower bound on the distance.
    """

    def __init__(self, lower_bound: int):
        super().__init__(f"distance is at least {lower_bound}")
        self.lower_bound = lower_bound


# --- integer roots --------------------------------------------------------------

def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, by exact binary search."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if k < 1:
        raise ValueError("root index must be >= 1")
    if n < 2 or k == 1:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def ceil_root(n: int, k: int) -> int:
    """ceil(n ** (1/k)) for n >= 0."""
    x = iroot(n, k)
    return x if x**k == n else x + 1


def size_lower_bound(g: GroupElement) -> int:
    """max(|r|, ceil(|p_i|^(1/i))): nobody reaches g in fewer letters."""
    bound = abs(g.t_exp)
    for i, p in enumerate(g.a_exps, start=1):
        bound = max(bound, ceil_root(abs(p), i))
    return bound


# --- exact distance -------------------------------------------------------------

def exact_distance(
    g: GroupElement,
    max_radius: int,
    memory_cap: int = DEFAULT_MEMORY_CAP,
    cache_dir=None,
) -> int:
    """d(1, g) if it is at most ``max_radius``, else raise RadiusExceeded.

    Uses a cached ball when one covers ``max_radius``. Otherwise it splits a
    putative geodesic in half: d(1, g) = min |x| + |x^-1 g| over x in the ball
    of radius ceil(max_radius / 2), which is exact whenever d(1, g) <= max_radius.
    """
    if size_lower_bound(g) > max_radius:
        raise RadiusExceeded(max_radius + 1)
    half = (max_radius + 1) // 2
    ball = get_ball(g.dim, half, memory_cap=memory_cap, cache_dir=cache_dir)
    table = ball.table
    direct = table.get(g.coords)
    if direct is not None and direct <= max_radius:
        return direct
    if ball.radius >= max_radius:
        raise RadiusExceeded(max_radius + 1)
    best = None
    for c, dx in table.items():
        x = GroupElement.from_coords(c)
        rest = table.get(multiply(invert(x), g).coords)
        if rest is not None:
            total = dx + rest
            if best is None or total < best:
                best = total
    if best is None or best > max_radius:
        raise RadiusExceeded(max_radius + 1)
    return best


# --- Waring decompositions ------------------------------------------------------

WARING_DP_LIMIT = 1_000_000

_dp_tables: dict[int, np.ndarray] = {}
_max_parts: dict[int, int] = {}


def waring_g(k: int) -> int:
    """The classical Waring number g(k) (valid for every k that fits in memory)."""
    if k == 1:
        return 1
    return 2**k + (3**k // 2**k) - 2


def _dp_table(k: int, n: int) -> np.ndarray:
    """best[m] = least number of positive k-th powers summing to m, for m <= n."""
    table = _dp_tables.get(k)
    if table is not None and len(table) > n:
        return table
    size = n if table is None else max(n, 2 * (len(table) - 1))
    size = min(max(size, 64), WARING_DP_LIMIT)
    big = np.iinfo(np.int64).max // 4
    best = np.full(size + 1, big, dtype=np.int64)
    best[0] = 0
    c = 1
    while c**k <= size:
        coin = c**k
        rows = -(-(size + 1) // coin)
        padded = np.full(rows * coin, big, dtype=np.int64)
        padded[: size + 1] = best
        grid = padded.reshape(rows, coin)
        steps = np.arange(rows, dtype=np.int64)[:, None]
        # unbounded use of this coin: best[j*coin + s] = min_{i<=j} best[i*coin + s] + (j - i)
        grid = np.minimum.accumulate(grid - steps, axis=0) + steps
        best = grid.reshape(-1)[: size + 1].copy()
        c += 1
    _dp_tables[k] = best
    return best


def waring_decompose(p: int, k: int) -> tuple[int, ...]:
    """Positive integers k_1 >= k_2 >= ... with sum of k-th powers equal to p.

    Up to WARING_DP_LIMIT the part count is the exact minimum; above it the
    largest k-th power is peeled off greedily until the remainder is in range.
    """
    if p < 1 or k < 1:
        raise ValueError("need p >= 1 and k >= 1")
    if k == 1:
        parts: tuple[int, ...] = (p,)
    else:
        head = []
        while p > WARING_DP_LIMIT:
            base = iroot(p, k)
            head.append(base)
            p -= base**k
        tail = []
        if p:
            best = _dp_table(k, p)
            while p:
                base = iroot(p, k)
                while best[p - base**k] != best[p] - 1:
                    base -= 1
                tail.append(base)
                p -= base**k
        parts = tuple(head + tail)
    _max_parts[k] = max(_max_parts.get(k, 0), len(parts))
    return parts


def observed_part_counts() -> dict[int, int]:
    """Largest part count produced so far in this process, per exponent."""
    return dict(_max_parts)


# --- short words ----------------------------------------------------------------

def central_power_word(p: int, dim: int) -> Word:
    """A word for ``a_dim^p`` avoiding the letter ``a_dim`` (for dim >= 2)."""
    if p == 0:
        return Word(dim)
    if p < 0:
        return central_power_word(-p, dim).inverse()
    if dim == 1:
        return Word(1, ((1, p),))
    syllables: list[tuple[int, int]] = []
    for k in waring_decompose(p, dim):
        inner = central_power_word(k ** (dim - 1), dim - 1).lifted()
        syllables.extend(inner.inverse().syllables)
        syllables.append((0, -k))
        syllables.extend(inner.syllables)
        syllables.append((0, k))
    return Word(dim, tuple(syllables))


def short_word(g: GroupElement) -> Word:
    """A word for g of length at most C_d * size_lower_bound(g)."""
    if g.dim == 1:
        return Word(1, ((0, g.t_exp), (1, g.a_exps[0])))
    head = short_word(project(g)).lifted()
    drift = eval_word(head).a_exps[-1]
    return head + central_power_word(g.a_exps[-1] - drift, g.dim)


@dataclass(frozen=True)
class Constants:
    """Bound constants for Gamma_dim as realized by this process's constructions.

    ``M_d`` is the largest Waring part count actually used for d-th powers, so
    these are monitoring values rather than universal constants.
    """

    dim: int
    M_d: int
    D_d: int
    C_d: int
    epsilon_d: int


def compute_constants(dim: int) -> Constants:
    parts = observed_part_counts()
    D, C, M = 1, 2, 1
    for d in range(2, dim + 1):
        M = max(parts.get(d, 0), 1)
        D_prev, C_prev = D, C
        D = 2 * (D_prev + 1) * M
        C = C_prev + D * (1 + C_prev**d)
    if dim == 1:
        M = max(parts.get(1, 0), 1)
    return Constants(dim, M, D, C, epsilon_bound(dim))
