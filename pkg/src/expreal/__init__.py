"""Exact evaluation of a monotone real function on [0, 1] that is computable
in exponential time but admits no polynomial modulus of continuity.

The function is F(x) = sum_{q >= 1} alpha_q(x) / q**2, where alpha_q is a
staircase of q steep ramps of slope 2**q.
"""

from .errors import DomainError, ResourceLimitError
from .exact import Dyadic, Rational, parse_rational, round_to_dyadic
from .cauchy import CauchyOracle, QueryStats, make_dithered_oracle, make_rational_oracle
from .construction import (
    EvalReport,
    Schedule,
    alpha,
    alpha_bruteforce,
    beta,
    eval_f_oracle,
    eval_f_rational,
    glue,
    schedule_for,
    tail_bound,
)
from .analysis import (
    ModulusRecord,
    Witness,
    certify_witness,
    make_witness,
    make_witness_at,
    modulus_lower_table,
    modulus_upper,
)

__version__ = "0.1.0"

__all__ = [
    "CauchyOracle",
    "DomainError",
    "Dyadic",
    "EvalReport",
    "ModulusRecord",
    "QueryStats",
    "Rational",
    "ResourceLimitError",
    "Schedule",
    "Witness",
    "alpha",
    "alpha_bruteforce",
    "beta",
    "certify_witness",
    "eval_f_oracle",
    "eval_f_rational",
    "glue",
    "make_dithered_oracle",
    "make_rational_oracle",
    "make_witness",
    "make_witness_at",
    "modulus_lower_table",
    "modulus_upper",
    "parse_rational",
    "round_to_dyadic",
    "schedule_for",
    "tail_bound",
]
