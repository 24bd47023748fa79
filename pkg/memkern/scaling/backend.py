import logging
import math
from dataclasses import dataclass, field

from memkern.base import Registry
from memkern.closure import markovian_limit_curve, ou_ode_solve
from memkern.constants import MC_RESOLUTION, ODE_RESOLUTION, PSEUDOMODE_N_MAX
from memkern.curve import CoherenceCurve, TimeGrid
from memkern.functional import (
    QuadratureSettings,
    coherence_from_phi,
    phi_curve_ou_closed_form,
    phi_quadrature,
)
from memkern.kernel import KIND_GAUSS, KIND_OU, KIND_PLAW, KIND_SPLAW, KernelSpec, SystemParams, markovian_equivalent
from memkern.pseudomode import (
    PseudomodeConfig,
    build_generator,
    build_tier_one_generator,
    evolve,
    extract_coherence,
    simulate_certified,
)
from memkern.stochastic import McConfig, mc_dephasing_average

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunSettings:
    """
    Backend-specific knobs shared by simulate and sweep

    c0: initial coherence; pseudomode always starts at 1/2 and ignores it
    """

    c0: complex = 1.0
    n_max: int = PSEUDOMODE_N_MAX
    certify: bool = True
    tier_one: bool = False
    n_traj: int = 10000
    seed: int = 42
    omega_q: float = 0.0
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)
    workers: int = 1


class Backend:
    """
    Produces a coherence curve for (params, kernel, grid)
    """

    name = ""
    kinds = ()

    def supports(self, spec: KernelSpec) -> bool:
        return spec.kind in self.kinds

    def check(self, spec: KernelSpec):
        if not self.supports(spec):
            if self.kinds == (KIND_OU,):
                raise ValueError("{} supports OU only".format(self.name))
            raise ValueError("{} does not support kernel '{}'".format(self.name, spec.kind))

    def max_dt(self, spec: KernelSpec) -> float:
        return math.inf

    def simulate(self, params: SystemParams, spec: KernelSpec, grid: TimeGrid, settings: RunSettings) -> CoherenceCurve:
        raise NotImplementedError()


backend_registry = Registry(Backend)


@backend_registry.register_cls(name="functional")
class FunctionalBackend(Backend):
    name = "functional"
    kinds = (KIND_OU, KIND_GAUSS, KIND_PLAW, KIND_SPLAW)

    def simulate(self, params, spec, grid, settings):
        self.check(spec)
        if spec.kind == KIND_OU:
            phi = phi_curve_ou_closed_form(params, spec.tau_c, grid)
        else:
            phi = phi_quadrature(spec, params, grid, settings.quadrature, settings.workers)
        return coherence_from_phi(phi, settings.c0)


@backend_registry.register_cls(name="ou-closure")
class OuClosureBackend(Backend):
    name = "ou-closure"
    kinds = (KIND_OU,)

    def max_dt(self, spec):
        return spec.tau_c / ODE_RESOLUTION

    def simulate(self, params, spec, grid, settings):
        self.check(spec)
        curve = ou_ode_solve(params, spec.tau_c, grid)
        if settings.c0 != 1.0:
            curve = curve.scaled(settings.c0).with_meta(c0=settings.c0)
        return curve


@backend_registry.register_cls(name="pseudomode")
class PseudomodeBackend(Backend):
    name = "pseudomode"
    kinds = (KIND_OU,)

    def max_dt(self, spec):
        return spec.tau_c / ODE_RESOLUTION

    def simulate(self, params, spec, grid, settings):
        self.check(spec)
        config = PseudomodeConfig.for_bath(params, spec.tau_c, settings.n_max, dt=grid.dt, t_final=grid.t_final)
        if settings.tier_one:
            run = evolve(build_tier_one_generator(params, config), None, grid)
            return extract_coherence(run).with_meta(params=params, kernel=spec, config=config, truncation="tier-one")
        if settings.certify:
            return simulate_certified(params, config, grid)
        run = evolve(build_generator(params, config), None, grid)
        return extract_coherence(run).with_meta(params=params, kernel=spec, config=config)


@backend_registry.register_cls(name="stochastic")
class StochasticBackend(Backend):
    name = "stochastic"
    kinds = (KIND_OU,)

    def max_dt(self, spec):
        return spec.tau_c / MC_RESOLUTION

    def simulate(self, params, spec, grid, settings):
        self.check(spec)
        if grid.t0 != 0:
            raise ValueError("stochastic backend: grid must start at t0 = 0")
        config = McConfig.for_params(
            params, settings.n_traj, grid.dt, grid.t_final, seed=settings.seed, omega_q=settings.omega_q
        )
        curve = mc_dephasing_average(config, params, spec, settings.workers)
        if settings.c0 != 1.0:
            curve = curve.scaled(settings.c0).with_meta(c0=settings.c0)
        return curve


@backend_registry.register_cls(name="markovian")
class MarkovianBackend(Backend):
    """
    Exponential asymptote of the kernel (its own D for the delta kernel)
    """

    name = "markovian"

    def supports(self, spec):
        return True

    def simulate(self, params, spec, grid, settings):
        equivalent = markovian_equivalent(spec, params)
        return markovian_limit_curve(equivalent, grid, settings.c0).with_meta(params=params, kernel=spec)


def get_backend(name: str) -> Backend:
    return backend_registry.get(name)
