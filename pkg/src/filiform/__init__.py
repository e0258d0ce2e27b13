"""Exact computation in the model filiform groups Gamma_d = Z^d x|_phi Z."""
from .ball import BallCache, MemoryCapExceeded, enumerate_ball, get_ball
from .conjugacy import (
    ConjugacyWitness,
    cl_experiment,
    conjugate,
    is_conjugate,
    shortest_conjugator_bfs,
    solve_central_discrepancy,
    solve_conjugacy,
    solve_in_lattice,
)
from .errors import DefiniteNegative, NoneWithin, NoRoot, NotConjugate, NotInCentralizer
from .group import (
    GroupElement,
    PhiMatrix,
    Word,
    epsilon,
    eval_word,
    gen_a,
    gen_t,
    identity,
    invert,
    lift,
    multiply,
    parse_element,
    parse_word,
    phi_pow,
    power,
    project,
)
from .metric import (
    RadiusExceeded,
    central_power_word,
    compute_constants,
    exact_distance,
    short_word,
    size_lower_bound,
    waring_decompose,
)
from .structure import (
    bezout_bounded,
    centralizer,
    max_root_mod_center,
    root_exact,
    zeta,
    zeta_image,
)

__version__ = "0.1.0"

__all__ = [
    "ConjugacyWitness",
    "cl_experiment",
    "conjugate",
    "is_conjugate",
    "shortest_conjugator_bfs",
    "solve_central_discrepancy",
    "solve_conjugacy",
    "solve_in_lattice",
    "GroupElement",
    "PhiMatrix",
    "Word",
    "epsilon",
    "eval_word",
    "gen_a",
    "gen_t",
    "identity",
    "invert",
    "lift",
    "multiply",
    "parse_element",
    "parse_word",
    "phi_pow",
    "power",
    "project",
    "RadiusExceeded",
    "central_power_word",
    "compute_constants",
    "exact_distance",
    "short_word",
    "size_lower_bound",
    "waring_decompose",
    "bezout_bounded",
    "centralizer",
    "max_root_mod_center",
    "root_exact",
    "zeta",
    "zeta_image",
    "BallCache",
    "MemoryCapExceeded",
    "enumerate_ball",
    "get_ball",
    "DefiniteNegative",
    "NoneWithin",
    "NoRoot",
    "NotConjugate",
    "NotInCentralizer",
]
