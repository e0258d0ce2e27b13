"""Deciding conjugacy in Gamma_d with explicit, verified conjugators.

The solver works down the central series. Conjugate u to v in Gamma_{d-1},
lift that conjugator w, and read off the exact central discrepancy
``w^-1 u w = v a_d^l``. The discrepancy is then removed by an element z whose
image centralizes the image of v; such a z exists iff l lies in the image of
the zeta homomorphism, which is the cyclic group generated by q * gcd(p, r)
where v = v_0^p a_{d-1}^r in Gamma_{d-1} and q is the t-exponent of v_0.
"""
from __future__ import annotations

import csv
import json
import random
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .ball import DEFAULT_MEMORY_CAP, get_ball
from .errors import NoneWithin, NotConjugate
from .group import (
    GroupElement,
    Word,
    eval_word,
    format_element,
    format_word,
    gen_a,
    gen_t,
    identity,
    invert,
    lift,
    multiply,
    phi_apply,
    power,
    project,
)
from .metric import RadiusExceeded, exact_distance, short_word
from .structure import bezout_bounded, zeta_image

__all__ = [
    "StageRecord",
    "ConjugacyWitness",
    "ExperimentRecord",
    "conjugate",
    "solve_in_lattice",
    "solve_central_discrepancy",
    "solve_conjugacy",
    "is_conjugate",
    "shortest_conjugator_bfs",
    "bfs_conjugators",
    "random_word",
    "cl_experiment",
    "write_experiment_csv",
    "EXPERIMENT_COLUMNS",
]


def conjugate(g: GroupElement, x: GroupElement) -> GroupElement:
    """x^-1 g x."""
    return multiply(multiply(invert(x), g), x)


@dataclass
class StageRecord:
    level: int
    case: str
    ell: int | None = None
    M: int | None = None
    rho: int | None = None
    lam: int | None = None
    mu: int | None = None


@dataclass
class ConjugacyWitness:
    u: GroupElement
    v: GroupElement
    conjugator: GroupElement
    word: Word
    word_length: int
    input_size: int
    stage_log: list[StageRecord] = field(default_factory=list)

    def verify(self) -> bool:
        return conjugate(self.u, self.conjugator) == self.v and eval_word(self.word) == self.conjugator

    def to_json(self) -> str:
        return json.dumps(
            {
                "u": format_element(self.u),
                "v": format_element(self.v),
                "conjugator": format_element(self.conjugator),
                "word": format_word(self.word),
                "word_length": self.word_length,
                "input_size": self.input_size,
                "stage_log": [asdict(s) for s in self.stage_log],
            }
        )


def _lattice_conjugator(u: GroupElement, v: GroupElement) -> GroupElement:
    """t^m with phi^m(u) = v, for u, v in the lattice subgroup."""
    if u.t_exp or v.t_exp:
        raise ValueError("both elements must lie in the lattice subgroup")
    dim = u.dim
    lead = next((i for i, x in enumerate(u.a_exps) if x), None)
    if lead is None or lead == dim - 1:
        if u != v:
            raise NotConjugate(f"{u} and {v} are distinct central elements")
        return identity(dim)
    diff = v.a_exps[lead + 1] - u.a_exps[lead + 1]
    if diff % u.a_exps[lead]:
        raise NotConjugate(f"{u} is not conjugate to {v}")
    m = diff // u.a_exps[lead]
    if phi_apply(dim, m, u.a_exps) != v.a_exps:
        raise NotConjugate(f"{u} is not conjugate to {v}")
    return gen_t(dim, m)


def _central_fix(gamma: GroupElement, ell: int, log: list[StageRecord] | None) -> GroupElement:
    dim = gamma.dim
    if dim < 2 or gamma.t_exp == 0:
        raise ValueError("need gamma outside the lattice subgroup of Gamma_d, d >= 2")
    below = project(gamma)
    zd = zeta_image(below)
    if ell % zd.image_generator:
        raise NotConjugate(f"{ell} is not a multiple of {zd.image_generator}")
    p, q, r, e = zd.p, zd.q, zd.r, zd.e
    # ell = M p q + rho q e with 0 <= rho < p/e
    M, rest = divmod(ell // q, p)
    rho = rest // e
    lam = mu = None
    y = gen_a(dim - 1, dim - 1, -M)
    if rho:
        if e == r:
            lam, mu = 1, 0
        else:
            lam, mu = bezout_bounded(r, p)
        step = multiply(power(zd.base, lam), gen_a(dim - 1, dim - 1, mu))
        y = multiply(y, power(step, rho))
    z = lift(y)
    if conjugate(gamma, z) != multiply(gamma, gen_a(dim, dim, ell)):
        raise AssertionError(f"central correction failed for gamma={gamma}, ell={ell}")
    if log is not None:
        log.append(StageRecord(dim, "discrepancy", ell, M, rho, lam, mu))
    return z


def _solve(u: GroupElement, v: GroupElement, log: list[StageRecord]) -> GroupElement:
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")
    if u.t_exp != v.t_exp:
        raise NotConjugate("t-exponents differ")
    dim = u.dim
    if dim == 1:
        if u != v:
            raise NotConjugate(f"{u} != {v} in an abelian group")
        log.append(StageRecord(1, "equal"))
        return identity(1)
    if u.t_exp == 0:
        x = _lattice_conjugator(u, v)
        log.append(StageRecord(dim, "lattice"))
        return x
    w = lift(_solve(project(u), project(v), log))
    ell = multiply(invert(v), conjugate(u, w)).a_exps[-1]
    # w^-1 u w = v a^ell, so we need z with z^-1 v z = v a^-ell
    z = _central_fix(v, -ell, log)
    return multiply(w, z)


def _witness(u: GroupElement, v: GroupElement, x: GroupElement, log: list[StageRecord]) -> ConjugacyWitness:
    if conjugate(u, x) != v:
        raise AssertionError(f"witness {x} does not conjugate {u} to {v}")
    word = short_word(x)
    size = max(len(short_word(u)), len(short_word(v)))
    return ConjugacyWitness(u, v, x, word, len(word), size, log)


def solve_in_lattice(u: GroupElement, v: GroupElement) -> ConjugacyWitness:
    log: list[StageRecord] = []
    x = _lattice_conjugator(u, v)
    log.append(StageRecord(u.dim, "lattice"))
    return _witness(u, v, x, log)


def solve_central_discrepancy(gamma: GroupElement, ell: int) -> GroupElement:
    """z with z^-1 gamma z = gamma a_d^ell, or NotConjugate if ell is out of reach."""
    return _central_fix(gamma, ell, None)


def solve_conjugacy(u: GroupElement, v: GroupElement) -> ConjugacyWitness:
    """A verified conjugator g with g^-1 u g = v; raises NotConjugate otherwise."""
    log: list[StageRecord] = []
    x = _solve(u, v, log)
    return _witness(u, v, x, log)


def is_conjugate(u: GroupElement, v: GroupElement) -> bool:
    try:
        _solve(u, v, [])
    except NotConjugate:
        return False
    return True


# --- brute force ----------------------------------------------------------------

def _conjugation_by(u: GroupElement):
    """Fast coords -> coords map for x -> x^-1 u x.

    With x = t^s a^q: x^-1 u x = t^r a^(phi^s(p) + q - phi^r(q)).
    """
    dim, r, p = u.dim, u.t_exp, u.a_exps
    moved: dict[int, tuple[int, ...]] = {}

    def apply(c: tuple[int, ...]) -> tuple[int, ...]:
        s, q = c[0], c[1:]
        ps = moved.get(s)
        if ps is None:
            ps = moved[s] = phi_apply(dim, s, p)
        qr = phi_apply(dim, r, q)
        return (r,) + tuple(a + b - c_ for a, b, c_ in zip(ps, q, qr))

    return apply


def shortest_conjugator_bfs(
    u: GroupElement,
    v: GroupElement,
    radius: int,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> GroupElement:
    """Shortest x with x^-1 u x = v, ties broken by least normal form.

    Raises NoneWithin when no conjugator has length <= radius.
    """
    if u.dim != v.dim:
        raise ValueError("dimension mismatch")
    ball = get_ball(u.dim, radius, memory_cap=memory_cap)
    target = v.coords
    conj = _conjugation_by(u)
    for c in ball.coords(max_dist=radius):
        if conj(c) == target:
            return GroupElement.from_coords(c)
    raise NoneWithin(radius)


def bfs_conjugators(
    u: GroupElement,
    radius: int,
    targets: Iterable[GroupElement] | None = None,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> dict[GroupElement, GroupElement]:
    """Shortest conjugator (canonical tie-break) for every conjugate of u it reaches.

    One scan of the ball answers shortest_conjugator_bfs(u, v, radius) for all v
    at once; ``targets`` restricts which v are kept.
    """
    ball = get_ball(u.dim, radius, memory_cap=memory_cap)
    wanted = None if targets is None else {t.coords for t in targets}
    conj = _conjugation_by(u)
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    for c in ball.coords(max_dist=radius):
        image = conj(c)
        if image in found or (wanted is not None and image not in wanted):
            continue
        found[image] = c
    return {GroupElement.from_coords(k): GroupElement.from_coords(x) for k, x in found.items()}


# --- experiments ----------------------------------------------------------------

EXPERIMENT_COLUMNS = ["dim", "n", "mode", "u", "v", "witness", "witness_len", "input_size", "ratio"]

# radius budget for exact input sizes; beyond it the short-word length is used
_EXACT_RADIUS = {1: 200, 2: 24, 3: 14}


@dataclass
class ExperimentRecord:
    dim: int
    n: int
    mode: str
    u: GroupElement
    v: GroupElement
    witness: GroupElement
    witness_length: int
    input_size: int
    ratio: float

    def row(self) -> list:
        return [
            self.dim,
            self.n,
            self.mode,
            format_element(self.u),
            format_element(self.v),
            format_element(self.witness),
            self.witness_length,
            self.input_size,
            f"{self.ratio:.6f}",
        ]


def random_word(dim: int, length: int, rng: random.Random) -> Word:
    """Uniform random letters (not necessarily reduced) over t, a_1..a_dim."""
    return Word.from_letters(dim, [(rng.randrange(dim + 1), rng.choice((1, -1))) for _ in range(length)])


def _input_size(g: GroupElement) -> int:
    upper = len(short_word(g))
    budget = min(upper, _EXACT_RADIUS.get(g.dim, 10))
    try:
        return exact_distance(g, budget)
    except RadiusExceeded:
        return upper


def cl_experiment(
    dim: int,
    n_values: Sequence[int],
    mode: str = "witness-family",
    seed: int = 0,
    samples: int = 50,
) -> list[ExperimentRecord]:
    """Conjugator-length measurements.

    ``witness-family`` runs the pairs (a_{d-1}, a_{d-1} a_d^(n^d)), whose
    shortest conjugator is t^(n^d); ``random-pairs`` draws u and c as random
    words of length n, sets v = c^-1 u c and solves.
    """
    records = []
    if mode == "witness-family":
        for n in n_values:
            if dim == 1:
                u = v = gen_a(1, 1)
            else:
                u = gen_a(dim, dim - 1)
                v = multiply(u, gen_a(dim, dim, n**dim))
            wit = solve_conjugacy(u, v)
            size = max(_input_size(u), _input_size(v))
            records.append(
                ExperimentRecord(dim, n, mode, u, v, wit.conjugator, wit.word_length, size,
                                 wit.word_length / n**dim)
            )
    elif mode == "random-pairs":
        rng = random.Random(seed)
        for n in n_values:
            for _ in range(samples):
                u = eval_word(random_word(dim, n, rng))
                c = eval_word(random_word(dim, n, rng))
                v = conjugate(u, c)
                wit = solve_conjugacy(u, v)
                records.append(
                    ExperimentRecord(dim, n, mode, u, v, wit.conjugator, wit.word_length,
                                     wit.input_size, wit.word_length / n**dim)
                )
    else:
        raise ValueError(f"unknown experiment mode {mode!r}")
    return records


def write_experiment_csv(records: Sequence[ExperimentRecord], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(EXPERIMENT_COLUMNS)
    for rec in records:
        writer.writerow(rec.row())
