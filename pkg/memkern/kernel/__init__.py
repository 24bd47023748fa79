from .params import SystemParams
from .kernel import (
    KIND_DELTA,
    KIND_GAUSS,
    KIND_OU,
    KIND_PLAW,
    KIND_SPLAW,
    Delta,
    Gaussian,
    Kernel,
    KernelSpec,
    OrnsteinUhlenbeck,
    ShiftedPowerLaw,
    SoftPowerLaw,
    kernel_alpha_zero,
    kernel_eval,
    kernel_for,
    kernel_registry,
    kernel_total_weight,
    markovian_equivalent,
    markovian_time,
)
