from ._core import (
    BuildError,
    ContractViolation,
    InvalidQuery,
    bench,
    color3,
    edge_color3,
    list_color,
    optimize_epsilon,
    reference_constants,
    run_cli,
    solve_3sat,
    solve_csp,
    solve_csp_random,
    work_factor,
)

__all__ = [
    "BuildError",
    "ContractViolation",
    "InvalidQuery",
    "bench",
    "color3",
    "edge_color3",
    "list_color",
    "optimize_epsilon",
    "reference_constants",
    "run_cli",
    "solve_3sat",
    "solve_csp",
    "solve_csp_random",
    "work_factor",
]
