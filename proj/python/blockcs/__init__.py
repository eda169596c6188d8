"""Block-sparse complex recovery: pursuit solver, AMP baseline, data generation."""

from blockcs._core import (
    BlockStructure,
    Problem,
    SensingMatrix,
    amp_solve,
    auto_tau,
    block_project,
    bnhtp_solve,
    exhaustive_solve,
    gen_instance,
    gradient,
    make_problem,
    objective,
    relative_error,
    support_rates,
)

__all__ = [
    "BlockStructure",
    "Problem",
    "SensingMatrix",
    "amp_solve",
    "auto_tau",
    "block_project",
    "bnhtp_solve",
    "exhaustive_solve",
    "gen_instance",
    "gradient",
    "make_problem",
    "objective",
    "relative_error",
    "support_rates",
]
