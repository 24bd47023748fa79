from .backend import (
    Backend,
    FunctionalBackend,
    MarkovianBackend,
    OuClosureBackend,
    PseudomodeBackend,
    RunSettings,
    StochasticBackend,
    backend_registry,
    get_backend,
)
from .sweep import (
    PowerLawFit,
    ScalingPoint,
    ScalingResult,
    SweepSettings,
    decay_curves,
    fit_power_law,
    sweep,
    sweep_grid,
)
