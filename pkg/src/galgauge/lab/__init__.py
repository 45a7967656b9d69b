"""Spectral numerics on periodic grids corroborating the symbolic results."""

from .diagnostics import Diagnostics, read_diagnostics_csv, write_snapshot
from .evolve import NumericalAbort, energy, evolve, iter_evolve
from .experiments import (
    boost_wavefield,
    default_potential,
    free_width_squared,
    iter_pure_gauge,
    product_state,
    run_boost_experiment,
    run_continuity_experiment,
    run_dispersion_experiment,
    run_separability_experiment,
    schmidt_defect,
)
from .grid import Grid, IncommensurateError, UnderResolvedError, WaveField, distance, init_gaussian
from .madelung import (
    AllMaskedError,
    MadelungFields,
    continuity_residual,
    continuity_residuals,
    madelung_extract,
)

__all__ = [
    "AllMaskedError", "Diagnostics", "Grid", "IncommensurateError", "MadelungFields",
    "NumericalAbort", "UnderResolvedError", "WaveField", "boost_wavefield", "continuity_residual",
    "continuity_residuals", "default_potential", "distance", "energy", "evolve", "free_width_squared",
    "init_gaussian", "iter_evolve", "iter_pure_gauge", "madelung_extract", "product_state",
    "read_diagnostics_csv", "run_boost_experiment", "run_continuity_experiment",
    "run_dispersion_experiment", "run_separability_experiment", "schmidt_defect", "write_snapshot",
]
