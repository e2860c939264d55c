"""Grid navigation with ORCA collision avoidance and local MAPF deadlock resolution."""

from ._core import (
    GridMap,
    MAPFInstance,
    build_map,
    generate_instance,
    line_of_sight,
    mapf_instance,
    plan_theta_star,
    run,
    solve_ecbs,
    solve_optimal,
    solve_push_and_rotate,
    validate_solution,
)

__all__ = [
    "GridMap",
    "MAPFInstance",
    "build_map",
    "generate_instance",
    "line_of_sight",
    "mapf_instance",
    "plan_theta_star",
    "run",
    "solve_ecbs",
    "solve_optimal",
    "solve_push_and_rotate",
    "validate_solution",
]
