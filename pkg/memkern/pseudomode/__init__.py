from .config import PseudomodeConfig
from .generator import (
    DensityMatrix,
    Liouvillian,
    annihilation,
    build_generator,
    build_mode_generator,
    build_tier_one_generator,
    initial_state,
)
from .evolve import (
    PseudomodeRun,
    TruncationCertificate,
    evolve,
    extract_coherence,
    mode_force_correlation,
    simulate_certified,
    truncation_converged,
)
