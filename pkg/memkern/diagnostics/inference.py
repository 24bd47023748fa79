import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from memkern.constants import INFER_MIN_SAMPLES, INFER_PHI_THRESHOLD, INFER_RESIDUAL_RATIO, INFER_WINDOW_DECADE
from memkern.curve import CoherenceCurve
from memkern.exceptions import DataError, ResolutionError
from memkern.kernel import KIND_OU, SystemParams, kernel_registry

logger = logging.getLogger(__name__)

REGIME_MARKOVIAN = "Markovian"
REGIME_CROSSOVER = "Crossover"
REGIME_NON_MARKOVIAN = "NonMarkovian"


@dataclass(frozen=True)
class FitWindow:
    t_start: float
    t_end: float
    count: int


@dataclass(frozen=True, eq=False)
class InferenceResult:
    """
    Bath memory recovered from the short-time curvature of a coherence curve

    alpha00_hat: inferred alpha(0); tau_c_hat: D / alpha00_hat (or the kernel-specific inverse), None when
    alpha00_hat <= 0; reliable is False unless the curve is classified NonMarkovian
    """

    alpha00_hat: float
    tau_c_hat: Optional[float]
    gamma_hat: float
    regime: str
    fit_window: FitWindow
    window_times: np.ndarray
    window_phi: np.ndarray
    residuals: np.ndarray
    ssr_quadratic: float
    ssr_linear: float
    reliable: bool
    kernel_kind: str = KIND_OU

    def to_report(self) -> str:
        """
        Flat key=value report
        """
        values = [
            ("alpha00_hat", "{!r}".format(self.alpha00_hat)),
            ("tau_c_hat", "none" if self.tau_c_hat is None else "{!r}".format(self.tau_c_hat)),
            ("gamma_hat", "{!r}".format(self.gamma_hat)),
            ("regime", self.regime),
            ("reliable", str(self.reliable).lower()),
            ("kernel_kind", self.kernel_kind),
            ("fit_t_start", "{!r}".format(self.fit_window.t_start)),
            ("fit_t_end", "{!r}".format(self.fit_window.t_end)),
            ("fit_count", str(self.fit_window.count)),
            ("ssr_quadratic", "{!r}".format(self.ssr_quadratic)),
            ("ssr_linear", "{!r}".format(self.ssr_linear)),
        ]
        return "\n".join("{}={}".format(k, v) for k, v in values) + "\n"


def classify_regime(ssr_quadratic: float, ssr_linear: float, ratio: float = INFER_RESIDUAL_RATIO) -> str:
    if ssr_quadratic * ratio <= ssr_linear and ssr_linear > 0:
        return REGIME_NON_MARKOVIAN
    if ssr_linear * ratio <= ssr_quadratic and ssr_quadratic > 0:
        return REGIME_MARKOVIAN
    return REGIME_CROSSOVER


def curvature_infer_alpha0(
    curve: CoherenceCurve, params: SystemParams, kernel_kind: str = KIND_OU
) -> InferenceResult:
    """
    Fit Phi = -ln(|C|/|C0|) ~ gamma t^2 over the earliest decade of samples with Phi <= 0.01

    alpha00_hat = gamma hbar^2 / a^2; the regime compares residuals of quadratic and linear fits through
    the origin; kernel_kind selects how alpha(0) maps back to tau_c
    """
    if abs(curve.t0) > 1e-12 * curve.dt:
        raise DataError("curvature_infer_alpha0(): curve must begin at t=0")
    if abs(curve.samples[0]) == 0:
        raise DataError("curvature_infer_alpha0(): |C(0)| is zero")
    kernel_cls = kernel_registry.get(kernel_kind)

    times = curve.times
    with np.errstate(divide="ignore"):
        phi = -np.log(curve.normalized())

    above = np.nonzero(phi > INFER_PHI_THRESHOLD)[0]
    end = int(above[0]) if above.size else len(curve)
    if end < 2:
        raise ResolutionError(
            "curvature_infer_alpha0(): coarse-grained samples obscure the quadratic regime; "
            "no sample with t > 0 has Phi <= {}".format(INFER_PHI_THRESHOLD)
        )
    t_window = times[end - 1]
    index = np.arange(1, end)
    index = index[times[index] >= t_window / INFER_WINDOW_DECADE]
    if index.size < INFER_MIN_SAMPLES:
        raise ResolutionError(
            "curvature_infer_alpha0(): only {} samples in the quadratic window, need {}; refine dt".format(
                index.size, INFER_MIN_SAMPLES
            )
        )

    t, y = times[index], phi[index]
    gamma = float(np.sum(t**2 * y) / np.sum(t**4))
    rate = float(np.sum(t * y) / np.sum(t**2))
    residuals = y - gamma * t**2
    ssr_quadratic = float(np.sum(residuals**2))
    ssr_linear = float(np.sum((y - rate * t) ** 2))
    regime = classify_regime(ssr_quadratic, ssr_linear)

    alpha0 = gamma / params.coupling
    tau_c = kernel_cls.tau_c_from_alpha_zero(alpha0, params) if alpha0 > 0 else None
    reliable = regime == REGIME_NON_MARKOVIAN and alpha0 > 0
    logger.debug(
        "curvature_infer_alpha0(): %d samples in [%.4g, %.4g], gamma=%.6g regime=%s",
        index.size, t[0], t[-1], gamma, regime,
    )
    return InferenceResult(
        alpha00_hat=alpha0,
        tau_c_hat=tau_c,
        gamma_hat=gamma,
        regime=regime,
        fit_window=FitWindow(float(t[0]), float(t[-1]), int(index.size)),
        window_times=t,
        window_phi=y,
        residuals=residuals,
        ssr_quadratic=ssr_quadratic,
        ssr_linear=ssr_linear,
        reliable=reliable,
        kernel_kind=kernel_kind,
    )
