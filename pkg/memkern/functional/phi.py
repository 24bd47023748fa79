import logging
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy import integrate

from memkern.base import Container
from memkern.constants import QUAD_EPSABS, QUAD_EPSREL, QUAD_LIMIT, SHORT_TIME_HORIZON
from memkern.curve import CoherenceCurve, TimeGrid
from memkern.exceptions import QuadratureError
from memkern.kernel import Kernel, KernelSpec, SystemParams, kernel_alpha_zero, kernel_for
from memkern.util.pool import ordered_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureSettings:
    epsabs: float = QUAD_EPSABS
    epsrel: float = QUAD_EPSREL
    limit: int = QUAD_LIMIT


@dataclass(frozen=True, eq=False)
class PhiCurve:
    """
    Decoherence functional sampled on a uniform grid
    """

    t0: float
    dt: float
    values: np.ndarray
    meta: Container = field(default_factory=Container)

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.size == 0:
            raise ValueError("PhiCurve(): values must be non-empty")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if not isinstance(self.meta, Container):
            object.__setattr__(self, "meta", Container(self.meta))

    def __len__(self):
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self))


@dataclass(frozen=True)
class ShortTimeLaw:
    """
    Quadratic onset Phi(t) ~ gamma t^2, trusted for t below validity_horizon
    """

    gamma: float
    validity_horizon: float


def _phi_point(kernel: Kernel, params: SystemParams, t: float, settings: QuadratureSettings):
    """
    (2 a^2 / hbar^2) int_0^t (t - tau) alpha(tau) dtau, with tau = tau_c u / (1 - u)
    :return: (value, absolute error estimate)
    """
    if t == 0:
        return 0.0, 0.0
    tau_c = kernel.spec.tau_c
    u_max = t / (t + tau_c)

    def integrand(u):
        rest = 1.0 - u
        tau = tau_c * u / rest
        return (t - tau) * kernel.at(params, tau) * tau_c / (rest * rest)

    result = integrate.quad(
        integrand, 0.0, u_max, epsabs=settings.epsabs, epsrel=settings.epsrel, limit=settings.limit, full_output=1
    )
    scale = 2.0 * params.coupling
    if len(result) > 3:
        raise QuadratureError(
            "phi_quadrature(): no convergence at t={:.6g}: {}".format(t, result[3]), scale * result[1]
        )
    return scale * result[0], scale * result[1]


def phi_quadrature(
    spec: KernelSpec, params: SystemParams, grid: TimeGrid, settings: QuadratureSettings = None, workers: int = 1
) -> PhiCurve:
    """
    Decoherence functional by adaptive quadrature of the stationary reduction

    :param spec: finite-memory kernel
    :param params: system parameters
    :param grid: sampling grid, t0 >= 0, n >= 2
    :param settings: quadrature tolerances
    :param workers: grid points evaluated concurrently, merged in order
    :return: PhiCurve
    """
    kernel = kernel_for(spec)
    if not kernel.pointwise:
        raise ValueError("phi_quadrature(): delta kernel has no finite-memory functional; use markovian_limit_curve")
    if grid.n < 2:
        raise ValueError("phi_quadrature(): grid must have at least 2 points")
    if grid.t0 < 0:
        raise ValueError("phi_quadrature(): grid must start at t0 >= 0")
    if settings is None:
        settings = QuadratureSettings()

    results = ordered_map(lambda t: _phi_point(kernel, params, float(t), settings), grid.times, workers)
    values = np.array([r[0] for r in results])
    max_err = max(r[1] for r in results)
    logger.debug("phi_quadrature(): %s, %d points, max error estimate %.3e", spec, grid.n, max_err)

    meta = {
        "method": "quadrature",
        "params": params,
        "kernel": spec,
        "quadrature": settings,
        "max_abserr": max_err,
    }
    return PhiCurve(grid.t0, grid.dt, values, Container(meta))


def phi_ou_closed_form(params: SystemParams, tau_c: float, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    (2 a^2 D / hbar^2) [t - tau_c (1 - exp(-t / tau_c))] for the symmetric OU kernel
    """
    if not math.isfinite(tau_c) or tau_c <= 0:
        raise ValueError("phi_ou_closed_form(): tau_c must be positive and finite")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise ValueError("phi_ou_closed_form(): t must be finite and non-negative")
    x = t / tau_c
    values = 2.0 * params.coupling * params.D * tau_c * (x + np.expm1(-x))
    if values.ndim == 0:
        return float(values)
    return values


def phi_curve_ou_closed_form(params: SystemParams, tau_c: float, grid: TimeGrid) -> PhiCurve:
    values = phi_ou_closed_form(params, tau_c, grid.times)
    meta = {"method": "closed-form", "params": params, "kernel": KernelSpec.ou(tau_c)}
    return PhiCurve(grid.t0, grid.dt, values, Container(meta))


def short_time_gamma(spec: KernelSpec, params: SystemParams) -> ShortTimeLaw:
    """
    Quadratic coefficient (a^2/hbar^2) alpha(0) and its validity horizon
    """
    try:
        alpha0 = kernel_alpha_zero(spec, params)
    except ValueError:
        raise ValueError("short_time_gamma(): the quadratic short-time regime collapses for the delta kernel")
    return ShortTimeLaw(gamma=params.coupling * alpha0, validity_horizon=SHORT_TIME_HORIZON * spec.tau_c)


def coherence_from_phi(phi: PhiCurve, c0: complex = 1.0) -> CoherenceCurve:
    """
    C(t) = c0 exp(-Phi(t))
    """
    if abs(c0) > 1:
        raise ValueError("coherence_from_phi(): |c0| must not exceed 1")
    samples = c0 * np.exp(-phi.values)
    meta = phi.meta.merged({"backend": "functional", "c0": complex(c0)})
    return CoherenceCurve(phi.t0, phi.dt, samples, meta)


def tau_dec_from_quadratic(law: ShortTimeLaw) -> float:
    """
    Phi(tau) = 1 crossing of the quadratic law, gamma^(-1/2)
    """
    if not law.gamma > 0:
        raise ValueError("tau_dec_from_quadratic(): gamma must be positive")
    return law.gamma**-0.5
