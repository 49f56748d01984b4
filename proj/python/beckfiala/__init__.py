"""Bounded-degree set-system discrepancy solvers.

Exact-rational implementations of the classic Beck-Fiala floating-color
algorithm (discrepancy <= 2d-2 for degree d >= 2) and a cohort-based
algorithm targeting 2d - log*(d), plus a brute-force oracle and instance
generators. The heavy lifting lives in the compiled ``_core`` extension.
"""

from ._core import (
    ConstantProfile,
    SetSystem,
    brute_force_discrepancy,
    check_inequalities,
    generate,
    instance_json,
    log_star,
    paper_profile_info,
    parse_instance,
    profile_from_json,
    r_term,
    run_classic,
    run_cohort,
    toy_profile,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "ConstantProfile",
    "SetSystem",
    "brute_force_discrepancy",
    "check_inequalities",
    "generate",
    "instance_json",
    "log_star",
    "paper_profile_info",
    "parse_instance",
    "profile_from_json",
    "r_term",
    "run_classic",
    "run_cohort",
    "toy_profile",
    "verify",
    "__version__",
]
