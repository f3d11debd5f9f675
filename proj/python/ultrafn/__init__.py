"""Galerkin level-chain solver for the point-mass membrane problem."""

from ._core import (
    Domain,
    DirichletSolution,
    EnergyReport,
    FamilyKind,
    Membership,
    MinimizerResult,
    NetFit,
    NetSample,
    Quantity,
    SearchOptions,
    SpaceLevel,
    Ultrafunction,
    continuity_probe,
    delta_at,
    energy_at,
    fit_net,
    inner,
    minimize,
    near_boundary_study,
    project,
    reduced_gradient,
    run_net,
    solve_point_source,
    solve_poisson,
)

__all__ = [
    "Domain",
    "DirichletSolution",
    "EnergyReport",
    "FamilyKind",
    "Membership",
    "MinimizerResult",
    "NetFit",
    "NetSample",
    "Quantity",
    "SearchOptions",
    "SpaceLevel",
    "Ultrafunction",
    "continuity_probe",
    "delta_at",
    "energy_at",
    "fit_net",
    "inner",
    "minimize",
    "near_boundary_study",
    "project",
    "reduced_gradient",
    "run_net",
    "solve_point_source",
    "solve_poisson",
]
