"""Shifted-l expansion bound states of the reduced semi-relativistic equation."""

from ._core import (
    OracleSolution,
    ParticlePair,
    Potential,
    SletSolution,
    SolverError,
    coulomb_closed_form,
    fixture,
    solve,
    solve_oracle,
)

__all__ = [
    "OracleSolution",
    "ParticlePair",
    "Potential",
    "SletSolution",
    "SolverError",
    "coulomb_closed_form",
    "fixture",
    "solve",
    "solve_oracle",
]
