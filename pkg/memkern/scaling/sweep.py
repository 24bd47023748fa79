import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import stats

from memkern.closure import markovian_limit_curve
from memkern.constants import FIT_MIN_DECADES, FIT_MIN_POINTS
from memkern.curve import CoherenceCurve, TimeGrid
from memkern.diagnostics import extract_tau_dec
from memkern.exceptions import FitError, SweepError
from memkern.functional import short_time_gamma, tau_dec_from_quadratic
from memkern.kernel import KernelSpec, SystemParams, markovian_equivalent, markovian_time
from memkern.util.pool import ordered_map

from .backend import Backend, RunSettings, get_backend

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepSettings:
    """
    horizon: t_final as a multiple of the larger of the quadratic and Markovian time estimates
    samples: minimum number of grid intervals up to t_final
    max_ratio: points with tau_dec / tau_c above this stay in the table but not in the fit
    """

    run: RunSettings = field(default_factory=RunSettings)
    horizon: float = 3.0
    samples: int = 600
    max_ratio: float = 1.0
    workers: Optional[int] = None


@dataclass(frozen=True)
class ScalingPoint:
    tau_c: float
    tau_dec: Optional[float]
    backend: str
    ratio: Optional[float] = None
    reason: Optional[str] = None

    @property
    def fitted(self) -> bool:
        return self.tau_dec is not None and self.reason is None


@dataclass(frozen=True, eq=False)
class PowerLawFit:
    beta: float
    prefactor: float
    r2: float
    residuals: np.ndarray
    n_points: int

    def to_report(self) -> str:
        return "beta={!r}\nprefactor={!r}\nr2={!r}\nn_points={}\n".format(
            self.beta, self.prefactor, self.r2, self.n_points
        )


@dataclass(frozen=True, eq=False)
class ScalingResult:
    points: Tuple[ScalingPoint, ...]
    fit: Optional[PowerLawFit] = None

    @property
    def beta(self) -> Optional[float]:
        return None if self.fit is None else self.fit.beta

    @property
    def prefactor(self) -> Optional[float]:
        return None if self.fit is None else self.fit.prefactor

    @property
    def r2(self) -> Optional[float]:
        return None if self.fit is None else self.fit.r2

    @property
    def residuals(self) -> Optional[np.ndarray]:
        return None if self.fit is None else self.fit.residuals

    def tau_dec(self, tau_c: float) -> Optional[float]:
        for point in self.points:
            if point.tau_c == tau_c:
                return point.tau_dec
        raise KeyError(tau_c)


def sweep_grid(backend: Backend, params: SystemParams, spec: KernelSpec, settings: SweepSettings) -> TimeGrid:
    """
    Grid reaching a few decoherence times, fine enough for the backend
    """
    tau_quadratic = tau_dec_from_quadratic(short_time_gamma(spec, params))
    tau_markov = markovian_time(markovian_equivalent(spec, params))
    t_final = settings.horizon * max(tau_quadratic, tau_markov)
    dt = min(backend.max_dt(spec), t_final / settings.samples)
    return TimeGrid.span(dt, t_final)


def _run_point(backend: Backend, params: SystemParams, spec: KernelSpec, settings: SweepSettings) -> ScalingPoint:
    grid = sweep_grid(backend, params, spec, settings)
    curve = backend.simulate(params, spec, grid, settings.run)
    tau_dec = extract_tau_dec(curve)
    if tau_dec is None:
        reason = "no e^-1 crossing up to t={:.6g}".format(grid.t_final)
        logger.warning("sweep(): %s tau_c=%.6g skipped: %s", backend.name, spec.tau_c, reason)
        return ScalingPoint(spec.tau_c, None, backend.name, None, reason)

    ratio = tau_dec / spec.tau_c
    reason = None
    if ratio > settings.max_ratio:
        reason = "tau_dec/tau_c={:.4g} above {:.4g}, outside the memory-dominated regime".format(
            ratio, settings.max_ratio
        )
        logger.info("sweep(): %s tau_c=%.6g excluded from fit: %s", backend.name, spec.tau_c, reason)
    logger.info("sweep(): %s tau_c=%.6g tau_dec=%.6g", backend.name, spec.tau_c, tau_dec)
    return ScalingPoint(spec.tau_c, tau_dec, backend.name, ratio, reason)


def sweep(
    backend: str,
    params: SystemParams,
    kernel_kind: str,
    tau_c_list: Sequence[float],
    settings: SweepSettings = None,
    p: float = None,
) -> ScalingResult:
    """
    Run one simulation per tau_c, extract tau_dec, fit tau_dec ~ tau_c^beta when the grid allows

    :param backend: backend registry name
    :param params: system parameters
    :param kernel_kind: kernel kind, e.g. 'ou'
    :param tau_c_list: correlation times
    :param settings: sweep settings
    :param p: power-law exponent for power-law kinds
    :return: ScalingResult, fit is None with fewer than 4 eligible points or less than 1.5 decades
    """
    tau_c_list = [float(t) for t in tau_c_list]
    if not tau_c_list:
        raise ValueError("sweep(): empty tau_c list")
    if any(not math.isfinite(t) or t <= 0 for t in tau_c_list):
        raise ValueError("sweep(): tau_c values must be strictly positive")
    if settings is None:
        settings = SweepSettings()

    runner = get_backend(backend)
    specs = [KernelSpec(kernel_kind, tau_c, p) for tau_c in tau_c_list]
    for spec in specs:
        runner.check(spec)

    points = ordered_map(lambda spec: _run_point(runner, params, spec, settings), specs, settings.workers or 1)
    if all(point.tau_dec is None for point in points):
        raise SweepError("sweep(): no point produced a decoherence time")

    eligible = [point for point in points if point.fitted]
    fit = None
    if len(eligible) >= FIT_MIN_POINTS:
        taus = [point.tau_c for point in eligible]
        decades = math.log10(max(taus) / min(taus))
        if decades >= FIT_MIN_DECADES:
            fit = fit_power_law(eligible)
        else:
            logger.info("sweep(): grid spans %.2f decades, not fitting", decades)
    else:
        logger.info("sweep(): %d eligible points, not fitting", len(eligible))
    return ScalingResult(tuple(points), fit)


def fit_power_law(points: Iterable[Union[ScalingPoint, Tuple[float, float]]]) -> PowerLawFit:
    """
    Ordinary least squares of ln tau_dec against ln tau_c
    """
    pairs = []
    for point in points:
        if isinstance(point, ScalingPoint):
            pairs.append((point.tau_c, point.tau_dec))
        else:
            pairs.append(tuple(point))
    pairs = [(x, y) for x, y in pairs if x is not None and y is not None]
    if len(pairs) < FIT_MIN_POINTS:
        raise FitError("fit_power_law(): need at least {} valid points, got {}".format(FIT_MIN_POINTS, len(pairs)))
    x = np.log([pair[0] for pair in pairs])
    y = np.log([pair[1] for pair in pairs])
    if np.ptp(x) == 0:
        raise FitError("fit_power_law(): degenerate abscissae, all tau_c equal")

    result = stats.linregress(x, y)
    residuals = y - (result.intercept + result.slope * x)
    return PowerLawFit(
        beta=float(result.slope),
        prefactor=float(math.exp(result.intercept)),
        r2=float(result.rvalue**2),
        residuals=residuals,
        n_points=len(pairs),
    )


def decay_curves(
    backend: str,
    params: SystemParams,
    kernel_kind: str,
    tau_c_list: Sequence[float],
    t_final: float,
    settings: RunSettings = None,
    p: float = None,
    samples: int = 600,
) -> List[CoherenceCurve]:
    """
    Coherence curves for several tau_c on a common grid, followed by the Markovian reference

    Every curve carries a 'label' entry in its metadata
    """
    if settings is None:
        settings = RunSettings()
    runner = get_backend(backend)
    specs = [KernelSpec(kernel_kind, float(tau_c), p) for tau_c in tau_c_list]
    for spec in specs:
        runner.check(spec)
    dt = min([t_final / samples] + [runner.max_dt(spec) for spec in specs])
    grid = TimeGrid.span(dt, t_final)

    curves = []
    for spec in specs:
        curve = runner.simulate(params, spec, grid, settings)
        curves.append(curve.with_meta(label="tau_c={:g}".format(spec.tau_c)))
    reference = markovian_limit_curve(params, grid, settings.c0)
    curves.append(reference.with_meta(label="Markovian"))
    return curves
