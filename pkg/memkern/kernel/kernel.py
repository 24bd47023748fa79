import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import integrate

from memkern.base import ClassRegistry
from memkern.constants import QUAD_LIMIT, WEIGHT_EPSABS, WEIGHT_EPSREL
from memkern.exceptions import QuadratureError

from .params import SystemParams

logger = logging.getLogger(__name__)

KIND_OU = "ou"
KIND_GAUSS = "gauss"
KIND_PLAW = "plaw"
KIND_SPLAW = "splaw"
KIND_DELTA = "delta"

SPEC_KEYS = ("kind", "tau_c", "p")


class Kernel:
    """
    Stationary, symmetric bath correlation function alpha(tau)

    Subclasses implement the closed formulas; instances are bound to a KernelSpec
    """

    label = ""
    needs_tau_c = True
    needs_p = False

    def __init__(self, spec: "KernelSpec"):
        self.spec = spec

    @classmethod
    def check_spec(cls, spec: "KernelSpec"):
        if cls.needs_tau_c:
            if spec.tau_c is None:
                raise ValueError("KernelSpec(): kind '{}' requires tau_c".format(spec.kind))
            if not math.isfinite(spec.tau_c) or spec.tau_c <= 0:
                raise ValueError("KernelSpec(): tau_c must be positive and finite, got {!r}".format(spec.tau_c))
        elif spec.tau_c is not None:
            raise ValueError("KernelSpec(): kind '{}' carries no tau_c".format(spec.kind))

        if cls.needs_p:
            if spec.p is None:
                raise ValueError("KernelSpec(): kind '{}' requires p".format(spec.kind))
            if not math.isfinite(spec.p):
                raise ValueError("KernelSpec(): p must be finite, got {!r}".format(spec.p))
        elif spec.p is not None:
            raise ValueError("KernelSpec(): kind '{}' takes no p".format(spec.kind))

    @property
    def pointwise(self) -> bool:
        return True

    def evaluate(self, params: SystemParams, tau: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """
        Evaluate alpha(|tau|)
        :param params: system parameters
        :param tau: scalar or array of lags
        :return: float for scalar input, ndarray otherwise
        """
        tau = np.asarray(tau, dtype=float)
        if not np.all(np.isfinite(tau)):
            raise ValueError("{}.evaluate(): tau must be finite".format(type(self).__name__))
        values = self._shape(params, np.abs(tau))
        if values.ndim == 0:
            return float(values)
        return values

    def _shape(self, params: SystemParams, tau: np.ndarray) -> np.ndarray:
        raise NotImplementedError()

    def at(self, params: SystemParams, tau: float) -> float:
        """
        Unchecked scalar evaluation for tau >= 0, used inside quadrature loops
        """
        return float(self._shape(params, tau))

    def alpha_zero(self, params: SystemParams) -> float:
        return float(self._shape(params, np.asarray(0.0)))

    def total_weight(self, params: SystemParams) -> float:
        raise NotImplementedError()

    @classmethod
    def tau_c_from_alpha_zero(cls, alpha0: float, params: SystemParams) -> float:
        """
        Invert alpha(0) for the correlation time at fixed D
        """
        return params.D / alpha0


kernel_registry = ClassRegistry(Kernel)


@dataclass(frozen=True)
class KernelSpec:
    """
    Tagged description of a bath kernel

    Text form: 'kind=ou tau_c=1.0', 'kind=plaw tau_c=1.0 p=2.0', 'kind=delta'
    """

    kind: str
    tau_c: Optional[float] = None
    p: Optional[float] = None

    def __post_init__(self):
        if not kernel_registry.has(self.kind):
            raise ValueError(
                "KernelSpec(): unknown kernel kind '{}'; available: {}".format(
                    self.kind, ", ".join(kernel_registry.names())
                )
            )
        for name in ("tau_c", "p"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, float(value))
        kernel_registry.get(self.kind).check_spec(self)

    @classmethod
    def ou(cls, tau_c: float) -> "KernelSpec":
        return cls(KIND_OU, tau_c)

    @classmethod
    def parse(cls, text: str) -> "KernelSpec":
        """
        Parse the plain-text key-value form
        :param text: e.g. 'kind=plaw tau_c=1.0 p=2.0'
        :return: KernelSpec
        """
        values = {}
        for token in text.split():
            key, sep, value = token.partition("=")
            if not sep or key not in SPEC_KEYS:
                raise ValueError("KernelSpec.parse(): invalid token '{}'".format(token))
            if key in values:
                raise ValueError("KernelSpec.parse(): duplicate key '{}'".format(key))
            values[key] = value

        if "kind" not in values:
            raise ValueError("KernelSpec.parse(): missing 'kind'")
        kind = values.pop("kind")
        try:
            numbers = {k: float(v) for k, v in values.items()}
        except ValueError:
            raise ValueError("KernelSpec.parse(): non-numeric value in '{}'".format(text))
        return cls(kind, **numbers)

    def to_text(self) -> str:
        parts = ["kind={}".format(self.kind)]
        if self.tau_c is not None:
            parts.append("tau_c={!r}".format(self.tau_c))
        if self.p is not None:
            parts.append("p={!r}".format(self.p))
        return " ".join(parts)

    def with_tau_c(self, tau_c: float) -> "KernelSpec":
        return dataclasses.replace(self, tau_c=tau_c)

    def asdict(self) -> dict:
        return {k: v for k, v in dataclasses.asdict(self).items() if v is not None}

    def __str__(self):
        return self.to_text()


@kernel_registry.register(KIND_OU)
class OrnsteinUhlenbeck(Kernel):
    label = "Ornstein-Uhlenbeck"

    def _shape(self, params, tau):
        tau_c = self.spec.tau_c
        return (params.D / tau_c) * np.exp(-tau / tau_c)

    def total_weight(self, params):
        return 2.0 * params.D


@kernel_registry.register(KIND_GAUSS)
class Gaussian(Kernel):
    label = "Gaussian"

    def _shape(self, params, tau):
        tau_c = self.spec.tau_c
        return params.D / (math.sqrt(math.pi) * tau_c) * np.exp(-((tau / tau_c) ** 2))

    def total_weight(self, params):
        return params.D

    @classmethod
    def tau_c_from_alpha_zero(cls, alpha0, params):
        return params.D / (math.sqrt(math.pi) * alpha0)


@kernel_registry.register(KIND_PLAW)
class SoftPowerLaw(Kernel):
    label = "soft power-law"
    needs_p = True

    @classmethod
    def check_spec(cls, spec):
        super().check_spec(spec)
        if spec.p <= 1:
            raise ValueError("KernelSpec(): power-law exponent must satisfy p > 1, got {!r}".format(spec.p))

    def _shape(self, params, tau):
        tau_c = self.spec.tau_c
        return (params.D / tau_c) / (1.0 + (tau / tau_c) ** self.spec.p)

    def total_weight(self, params):
        # u = tau / (tau + tau_c) maps [0, inf) onto [0, 1)
        p = self.spec.p

        def integrand(u):
            return params.D / ((1.0 - u) ** 2 + u**p * (1.0 - u) ** (2.0 - p))

        result = integrate.quad(
            integrand, 0.0, 1.0, epsabs=WEIGHT_EPSABS, epsrel=WEIGHT_EPSREL, limit=QUAD_LIMIT, full_output=1
        )
        if len(result) > 3:
            raise QuadratureError("SoftPowerLaw.total_weight(): {}".format(result[3]), result[1])
        logger.debug("power-law weight p=%s: %.15g (err %.2e)", p, result[0], result[1])
        return 2.0 * result[0]


@kernel_registry.register(KIND_SPLAW)
class ShiftedPowerLaw(Kernel):
    label = "shifted power-law"
    needs_p = True

    @classmethod
    def check_spec(cls, spec):
        super().check_spec(spec)
        if spec.p <= 1:
            raise ValueError("KernelSpec(): power-law exponent must satisfy p > 1, got {!r}".format(spec.p))

    def _shape(self, params, tau):
        tau_c = self.spec.tau_c
        return (params.D / tau_c) * (1.0 + tau / tau_c) ** (-self.spec.p)

    def total_weight(self, params):
        return 2.0 * params.D / (self.spec.p - 1.0)


@kernel_registry.register(KIND_DELTA)
class Delta(Kernel):
    """
    Memoryless limit alpha = 2 D delta(tau)
    """

    label = "delta"
    needs_tau_c = False

    @property
    def pointwise(self) -> bool:
        return False

    def evaluate(self, params, tau):
        raise ValueError("Delta.evaluate(): kernel has no pointwise representation")

    def alpha_zero(self, params):
        raise ValueError("Delta.alpha_zero(): alpha(0) diverges in the memoryless limit")

    def total_weight(self, params):
        return 2.0 * params.D

    @classmethod
    def tau_c_from_alpha_zero(cls, alpha0, params):
        raise ValueError("Delta.tau_c_from_alpha_zero(): memoryless kernel has no correlation time")


def kernel_for(spec: KernelSpec) -> Kernel:
    return kernel_registry.create(spec.kind, spec)


def kernel_eval(spec: KernelSpec, params: SystemParams, tau):
    """
    alpha(|tau|) for the given kernel
    """
    return kernel_for(spec).evaluate(params, tau)


def kernel_alpha_zero(spec: KernelSpec, params: SystemParams) -> float:
    return kernel_for(spec).alpha_zero(params)


def kernel_total_weight(spec: KernelSpec, params: SystemParams) -> float:
    """
    Two-sided integral of alpha over the real line

    OU: 2D; Gaussian: D; soft power-law: 2D (pi/p)/sin(pi/p) (by quadrature);
    shifted power-law: 2D/(p-1); delta: 2D
    """
    return kernel_for(spec).total_weight(params)


def markovian_time(params: SystemParams) -> float:
    """
    Memoryless decoherence time hbar^2 / (a^2 D)
    """
    return params.hbar**2 / (params.a**2 * params.D)


def markovian_equivalent(spec: KernelSpec, params: SystemParams) -> SystemParams:
    """
    Parameters whose exponential curve exp(-a^2 D_eq t / hbar^2) is the long-time asymptote of the kernel

    Finite-memory kernels use D_eq = total weight; the delta kernel keeps D
    """
    if spec.kind == KIND_DELTA:
        return params
    return params.replace(D=kernel_total_weight(spec, params))
