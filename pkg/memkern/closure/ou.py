import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.integrate import solve_ivp

from memkern.base import Container
from memkern.constants import ODE_ATOL, ODE_RESOLUTION, ODE_RTOL
from memkern.curve import CoherenceCurve, TimeGrid
from memkern.exceptions import IntegrationError, ResolutionError
from memkern.kernel import KernelSpec, SystemParams, markovian_time

logger = logging.getLogger(__name__)

REGIME_UNDERDAMPED = "underdamped"
REGIME_CRITICAL = "critical"
REGIME_OVERDAMPED = "overdamped"

# relative sqrt(|discriminant|) / damping below which the repeated-root branch is used
_CRITICAL_WIDTH = 1e-6


@dataclass(frozen=True)
class OuOdeCoefficients:
    """
    C'' + damping C' + stiffness C = 0
    """

    damping: float
    stiffness: float

    def __post_init__(self):
        if not self.damping > 0 or not self.stiffness > 0:
            raise ValueError("OuOdeCoefficients(): damping and stiffness must be strictly positive")

    @classmethod
    def from_params(cls, params: SystemParams, tau_c: float) -> "OuOdeCoefficients":
        if not math.isfinite(tau_c) or tau_c <= 0:
            raise ValueError("OuOdeCoefficients.from_params(): tau_c must be positive and finite")
        return cls(damping=1.0 / tau_c, stiffness=2.0 * params.coupling * params.D / tau_c)

    @property
    def discriminant(self) -> float:
        return self.damping**2 - 4.0 * self.stiffness

    @property
    def is_underdamped(self) -> bool:
        return self.discriminant < 0

    @property
    def regime(self) -> str:
        delta = self.discriminant
        if math.sqrt(abs(delta)) <= 2.0 * _CRITICAL_WIDTH * self.damping:
            return REGIME_CRITICAL
        return REGIME_UNDERDAMPED if delta < 0 else REGIME_OVERDAMPED


def ou_ode_analytic(params: SystemParams, tau_c: float, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Exact solution of the closure ODE with C(0) = 1, C'(0) = 0
    """
    coef = OuOdeCoefficients.from_params(params, tau_c)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("ou_ode_analytic(): t must be non-negative")

    half = coef.damping / 2.0
    delta = coef.discriminant
    width = math.sqrt(abs(delta)) / 2.0
    if width <= _CRITICAL_WIDTH * coef.damping:
        values = np.exp(-half * t) * (1.0 + half * t)
    elif delta < 0:
        values = np.exp(-half * t) * (np.cos(width * t) + (half / width) * np.sin(width * t))
    else:
        fast, slow = -half - width, -half + width
        values = (slow * np.exp(fast * t) - fast * np.exp(slow * t)) / (slow - fast)
    if values.ndim == 0:
        return float(values)
    return values


def ou_ode_solve(params: SystemParams, tau_c: float, grid: TimeGrid, rtol: float = ODE_RTOL, atol: float = ODE_ATOL):
    """
    Integrate the closure ODE with an explicit adaptive Runge-Kutta method

    :param params: system parameters
    :param tau_c: correlation time
    :param grid: grid starting at t0 = 0 with dt <= tau_c / 50
    :return: CoherenceCurve with C(0) = 1
    """
    coef = OuOdeCoefficients.from_params(params, tau_c)
    if grid.t0 != 0:
        raise ValueError("ou_ode_solve(): grid must start at t0 = 0")
    if grid.dt > tau_c / ODE_RESOLUTION:
        raise ResolutionError(
            "ou_ode_solve(): dt={:.6g} does not resolve tau_c={:.6g}; need dt <= tau_c/{}".format(
                grid.dt, tau_c, ODE_RESOLUTION
            )
        )

    times = grid.times
    if grid.n == 1:
        samples = np.ones(1)
    else:
        damping, stiffness = coef.damping, coef.stiffness

        def rhs(_, y):
            return [y[1], -damping * y[1] - stiffness * y[0]]

        sol = solve_ivp(
            rhs, (0.0, times[-1]), [1.0, 0.0], method="DOP853", t_eval=times, rtol=rtol, atol=atol
        )
        if not sol.success:
            raise IntegrationError("ou_ode_solve(): {}".format(sol.message), float(sol.t[-1]) if sol.t.size else 0.0)
        logger.debug("ou_ode_solve(): tau_c=%s nfev=%d regime=%s", tau_c, sol.nfev, coef.regime)
        samples = sol.y[0]

    meta = {
        "backend": "ou-closure",
        "params": params,
        "kernel": KernelSpec.ou(tau_c),
        "method": "DOP853",
        "rtol": rtol,
        "atol": atol,
        "regime": coef.regime,
        "c0": 1.0,
    }
    return CoherenceCurve(0.0, grid.dt, samples.astype(complex), Container(meta))


def markovian_limit_curve(params: SystemParams, grid: TimeGrid, c0: complex = 1.0) -> CoherenceCurve:
    """
    Memoryless reference C(t) = c0 exp(-t / tau_M)
    """
    tau_m = markovian_time(params)
    samples = c0 * np.exp(-grid.times / tau_m)
    meta = {"backend": "markovian", "params": params, "kernel": KernelSpec("delta"), "tau_m": tau_m, "c0": c0}
    return CoherenceCurve(grid.t0, grid.dt, samples, Container(meta))
