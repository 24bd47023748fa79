import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import entr

from memkern.base import Container
from memkern.curve import CoherenceCurve
from memkern.exceptions import DataError

from .tau_dec import extract_tau_dec, first_crossing

_POPULATION_TOLERANCE = 1e-12
_POSITIVITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DephasingState:
    """
    Qubit state [[rho_ll, c], [c*, rho_rr]] under pure dephasing
    """

    rho_ll: float
    rho_rr: float
    c: complex = 0j

    def __post_init__(self):
        _check_populations(self.rho_ll, self.rho_rr)
        if abs(self.c) ** 2 > self.rho_ll * self.rho_rr * (1.0 + _POSITIVITY_TOLERANCE) + 1e-15:
            raise ValueError("DephasingState(): |c|^2 exceeds rho_ll * rho_rr")

    def matrix(self) -> np.ndarray:
        return np.array([[self.rho_ll, self.c], [np.conj(self.c), self.rho_rr]], dtype=complex)


@dataclass(frozen=True, eq=False)
class DiagnosticsSeries:
    times: np.ndarray
    purity: np.ndarray
    entropy: np.ndarray
    meta: Container = field(default_factory=Container)

    def __len__(self):
        return self.times.size


@dataclass(frozen=True)
class SignatureTimes:
    """
    tau_dec: |C| falls to e^-1 of its start
    tau_purity: purity excess over the dephased value falls to e^-1 of its start
    tau_entropy: entropy reaches the given fraction of ln 2
    """

    tau_dec: Optional[float]
    tau_purity: Optional[float]
    tau_entropy: Optional[float]


def _check_populations(rho_ll: float, rho_rr: float):
    if rho_ll < 0 or rho_rr < 0:
        raise ValueError("populations must be non-negative")
    if abs(rho_ll + rho_rr - 1.0) > _POPULATION_TOLERANCE:
        raise ValueError("populations must sum to 1, got {!r}".format(rho_ll + rho_rr))


def _purity(rho_ll, rho_rr, c_abs):
    return rho_ll**2 + rho_rr**2 + 2.0 * c_abs**2


def _entropy(rho_ll, rho_rr, c_abs):
    radius = np.sqrt((rho_ll - rho_rr) ** 2 + 4.0 * c_abs**2)
    lam_plus = 0.5 * (1.0 + radius)
    # det / lam_plus avoids cancellation in (1 - radius) / 2
    lam_minus = np.maximum(rho_ll * rho_rr - c_abs**2, 0.0) / lam_plus
    return entr(lam_plus) + entr(lam_minus)


def purity(state: DephasingState) -> float:
    """
    rho_ll^2 + rho_rr^2 + 2 |c|^2
    """
    return float(_purity(state.rho_ll, state.rho_rr, abs(state.c)))


def entropy(state: DephasingState) -> float:
    """
    von Neumann entropy in nats, 0 ln 0 = 0
    """
    return float(_entropy(state.rho_ll, state.rho_rr, abs(state.c)))


def diagnostics_along_curve(curve: CoherenceCurve, rho_ll: float, rho_rr: float) -> DiagnosticsSeries:
    """
    Purity and entropy at every sample, populations held constant
    """
    _check_populations(rho_ll, rho_rr)
    c_abs = curve.magnitude
    bound = rho_ll * rho_rr * (1.0 + _POSITIVITY_TOLERANCE) + 1e-15
    bad = np.nonzero(c_abs**2 > bound)[0]
    if bad.size:
        i = int(bad[0])
        raise DataError(
            "diagnostics_along_curve(): |C|^2={:.12g} > rho_ll*rho_rr={:.12g} at sample {} (t={:.6g})".format(
                c_abs[i] ** 2, rho_ll * rho_rr, i, curve.t0 + i * curve.dt
            )
        )
    meta = curve.meta.merged({"rho_ll": rho_ll, "rho_rr": rho_rr})
    return DiagnosticsSeries(
        curve.times, _purity(rho_ll, rho_rr, c_abs), _entropy(rho_ll, rho_rr, c_abs), meta
    )


def signature_times(
    curve: CoherenceCurve, rho_ll: float = 0.5, rho_rr: float = 0.5, entropy_fraction: float = 0.5
) -> SignatureTimes:
    """
    Characteristic times of coherence, purity and entropy for an initially pure superposition

    The curve is rescaled so that |C(t0)| = sqrt(rho_ll * rho_rr)
    """
    _check_populations(rho_ll, rho_rr)
    scaled = curve.normalized() * math.sqrt(rho_ll * rho_rr)
    times = curve.times
    p = _purity(rho_ll, rho_rr, scaled)
    floor = rho_ll**2 + rho_rr**2
    excess = (p - floor) / (p[0] - floor) if p[0] > floor else np.zeros_like(p)
    s = _entropy(rho_ll, rho_rr, scaled)
    return SignatureTimes(
        tau_dec=extract_tau_dec(curve),
        tau_purity=first_crossing(times, excess, math.exp(-1.0)),
        tau_entropy=first_crossing(times, -s, -entropy_fraction * math.log(2.0)),
    )
