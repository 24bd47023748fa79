import dataclasses
import math
from dataclasses import dataclass

from memkern.constants import PSEUDOMODE_N_MAX
from memkern.curve import TimeGrid
from memkern.kernel import SystemParams


@dataclass(frozen=True)
class PseudomodeConfig:
    """
    Single damped mode reproducing the OU force correlation (D/tau_c) exp(-|t-s|/tau_c)

    n_max: highest retained occupation level
    g: system-mode coupling, sqrt(D/tau_c)/hbar
    kappa: mode decay rate, 2/tau_c
    """

    n_max: int
    g: float
    kappa: float
    dt: float
    t_final: float

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError("PseudomodeConfig(): n_max must be a positive integer")
        object.__setattr__(self, "n_max", int(self.n_max))
        if not math.isfinite(self.g) or self.g < 0:
            raise ValueError("PseudomodeConfig(): g must be non-negative and finite")
        if not math.isfinite(self.kappa) or self.kappa <= 0:
            raise ValueError("PseudomodeConfig(): kappa must be positive and finite")
        if not self.dt > 0 or not self.t_final > 0:
            raise ValueError("PseudomodeConfig(): dt and t_final must be positive")

    @classmethod
    def for_bath(
        cls, params: SystemParams, tau_c: float, n_max: int = PSEUDOMODE_N_MAX, dt: float = None, t_final: float = 10.0
    ) -> "PseudomodeConfig":
        if not math.isfinite(tau_c) or tau_c <= 0:
            raise ValueError("PseudomodeConfig.for_bath(): tau_c must be positive and finite")
        return cls(
            n_max=n_max,
            g=math.sqrt(params.D / tau_c) / params.hbar,
            kappa=2.0 / tau_c,
            dt=tau_c / 50.0 if dt is None else dt,
            t_final=t_final,
        )

    @property
    def tau_c(self) -> float:
        return 2.0 / self.kappa

    @property
    def grid(self) -> TimeGrid:
        return TimeGrid.span(self.dt, self.t_final)

    def with_n_max(self, n_max: int) -> "PseudomodeConfig":
        return dataclasses.replace(self, n_max=n_max)
