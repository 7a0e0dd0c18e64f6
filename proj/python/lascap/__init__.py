"""Exact Lasserre hierarchy toolkit for valued CSPs.

Instances are passed as text in the CLI file formats (.vcsp, .lp, .sdp,
.3lin, .cnf); rational results are fractions.Fraction.
"""

from ._lascap import (
    BudgetExhausted,
    ContractViolation,
    ParseError,
    TooLarge,
    blp_value,
    brute_force_opt,
    encode,
    lift,
    min_capture_level,
    min_eigenvalue,
    psd_certificate,
    satisfiable,
    solve_level,
    threelin_to_threesat,
    threesat_to_maxcut,
)

__all__ = [
    "BudgetExhausted",
    "ContractViolation",
    "ParseError",
    "TooLarge",
    "blp_value",
    "brute_force_opt",
    "encode",
    "lift",
    "min_capture_level",
    "min_eigenvalue",
    "psd_certificate",
    "satisfiable",
    "solve_level",
    "threelin_to_threesat",
    "threesat_to_maxcut",
]
