from .ou import (
    McConfig,
    PhaseStatistics,
    mc_dephasing_average,
    mc_phase_statistics,
    sample_ou_path,
    sample_ou_paths,
)
