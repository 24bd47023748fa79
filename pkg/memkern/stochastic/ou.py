import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.signal import lfilter

from memkern.base import Container
from memkern.constants import MC_BLOCK_SIZE, MC_MIN_TRAJECTORIES, MC_RESOLUTION, POINTER_SCALE
from memkern.curve import CoherenceCurve, TimeGrid
from memkern.exceptions import ResolutionError
from memkern.kernel import KIND_OU, KernelSpec, SystemParams
from memkern.resource.config import MemkernEnv
from memkern.util.pool import ordered_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class McConfig:
    """
    Monte Carlo settings for classical OU dephasing noise

    sigma: noise amplitude, sigma^2 = D for the stationary correlation (sigma^2/tau_c) exp(-|tau|/tau_c)
    block_size: trajectories per seeding block; block k draws from SeedSequence(seed, spawn_key=(k,))
    omega_q: optional qubit frequency, adds the free rotation exp(-i omega_q t)
    target_stderr: optional precision goal; exceeding it is reported, not raised
    """

    n_traj: int
    dt: float
    t_final: float
    seed: int = 42
    sigma: float = 1.0
    block_size: int = MC_BLOCK_SIZE
    omega_q: float = 0.0
    target_stderr: Optional[float] = None

    def __post_init__(self):
        if int(self.n_traj) != self.n_traj or self.n_traj < MC_MIN_TRAJECTORIES:
            raise ValueError("McConfig(): n_traj must be an integer >= {}".format(MC_MIN_TRAJECTORIES))
        if not self.dt > 0 or not self.t_final > 0:
            raise ValueError("McConfig(): dt and t_final must be positive")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ValueError("McConfig(): seed must be a 64-bit unsigned integer")
        if not math.isfinite(self.sigma) or self.sigma < 0:
            raise ValueError("McConfig(): sigma must be non-negative")
        if int(self.block_size) != self.block_size or self.block_size < 1:
            raise ValueError("McConfig(): block_size must be a positive integer")
        object.__setattr__(self, "n_traj", int(self.n_traj))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "block_size", int(self.block_size))

    @classmethod
    def for_params(cls, params: SystemParams, n_traj: int, dt: float, t_final: float, **kwargs) -> "McConfig":
        kwargs.setdefault("block_size", MemkernEnv().build()["block_size"])
        return cls(n_traj=n_traj, dt=dt, t_final=t_final, sigma=math.sqrt(params.D), **kwargs)

    @property
    def grid(self) -> TimeGrid:
        return TimeGrid.span(self.dt, self.t_final)

    @property
    def n_blocks(self) -> int:
        return -(-self.n_traj // self.block_size)

    def replace(self, **changes) -> "McConfig":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True, eq=False)
class PhaseStatistics:
    """
    Trajectory averages of the accumulated phase
    """

    grid: TimeGrid
    mean: np.ndarray
    stderr: np.ndarray
    phase_variance: np.ndarray
    phase_variance_stderr: np.ndarray
    n_traj: int


def _check(config: McConfig, spec: KernelSpec):
    if spec.kind != KIND_OU:
        raise ValueError("stochastic backend: unsupported kernel '{}', OU only".format(spec.kind))
    if config.dt > spec.tau_c / MC_RESOLUTION:
        raise ResolutionError(
            "stochastic backend: dt={:.6g} exceeds tau_c/{} = {:.6g}".format(
                config.dt, MC_RESOLUTION, spec.tau_c / MC_RESOLUTION
            )
        )


def _block_paths(config: McConfig, spec: KernelSpec, block: int, count: int, steps: int) -> np.ndarray:
    """
    Exact OU discretization, stationary start; one row per trajectory
    """
    rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(block,)))
    normals = rng.standard_normal((count, steps))
    tau_c = spec.tau_c
    variance = config.sigma**2 / tau_c
    decay = math.exp(-config.dt / tau_c)
    kicks = normals * math.sqrt(-variance * math.expm1(-2.0 * config.dt / tau_c))
    kicks[:, 0] = normals[:, 0] * math.sqrt(variance)
    # B_n = decay * B_{n-1} + kick_n
    return lfilter([1.0], [1.0, -decay], kicks, axis=1)


def sample_ou_paths(config: McConfig, spec: KernelSpec, n: int = None) -> np.ndarray:
    """
    First n trajectories (default n_traj) of the configured ensemble
    :return: array of shape (n, steps)
    """
    _check(config, spec)
    n = config.n_traj if n is None else n
    steps = config.grid.n
    rows = []
    for block in range(-(-n // config.block_size)):
        count = min(config.block_size, n - block * config.block_size)
        rows.append(_block_paths(config, spec, block, count, steps))
    return np.concatenate(rows, axis=0)


def sample_ou_path(config: McConfig, spec: KernelSpec, index: int = 0) -> np.ndarray:
    """
    Trajectory number index of the ensemble, B(t_i) on config.grid
    """
    _check(config, spec)
    if not 0 <= index < config.n_traj:
        raise ValueError("sample_ou_path(): index out of range")
    block, offset = divmod(index, config.block_size)
    count = min(config.block_size, config.n_traj - block * config.block_size)
    return _block_paths(config, spec, block, count, config.grid.n)[offset]


def mc_phase_statistics(config: McConfig, params: SystemParams, spec: KernelSpec, workers: int = 1):
    """
    Accumulate phase (c_cal/hbar) int_0^t B ds per trajectory, c_cal = a sqrt(2), and average exp(-i phase)

    Blocks are summed in block order, so the result does not depend on the worker count
    """
    _check(config, spec)
    grid = config.grid
    steps = grid.n
    # pointer separation
    scale = 2.0 * params.a * POINTER_SCALE / params.hbar

    def run_block(block):
        count = min(config.block_size, config.n_traj - block * config.block_size)
        paths = _block_paths(config, spec, block, count, steps)
        phase = scale * cumulative_trapezoid(paths, dx=config.dt, axis=1, initial=0.0)
        cos, sin = np.cos(phase), np.sin(phase)
        return (
            cos.sum(axis=0),
            sin.sum(axis=0),
            (cos**2).sum(axis=0),
            (sin**2).sum(axis=0),
            phase.sum(axis=0),
            (phase**2).sum(axis=0),
        )

    totals = [np.zeros(steps) for _ in range(6)]
    for sums in ordered_map(run_block, range(config.n_blocks), workers):
        for total, part in zip(totals, sums):
            total += part

    n = config.n_traj
    s_cos, s_sin, s_cos2, s_sin2, s_phi, s_phi2 = totals
    mean_cos, mean_sin, mean_phi = s_cos / n, s_sin / n, s_phi / n
    var_cos = np.maximum(s_cos2 - n * mean_cos**2, 0.0) / (n - 1)
    var_sin = np.maximum(s_sin2 - n * mean_sin**2, 0.0) / (n - 1)
    var_phi = np.maximum(s_phi2 - n * mean_phi**2, 0.0) / (n - 1)

    rotation = np.exp(-1j * config.omega_q * grid.times)
    mean = (mean_cos - 1j * mean_sin) * rotation
    stderr = np.sqrt((var_cos + var_sin) / n)
    return PhaseStatistics(
        grid=grid,
        mean=mean,
        stderr=stderr,
        phase_variance=var_phi,
        phase_variance_stderr=var_phi * math.sqrt(2.0 / (n - 1)),
        n_traj=n,
    )


def mc_dephasing_average(config: McConfig, params: SystemParams, spec: KernelSpec, workers: int = 1):
    """
    Trajectory-averaged coherence <exp(-i phase(t))> with standard errors
    :return: CoherenceCurve with stderr
    """
    stats = mc_phase_statistics(config, params, spec, workers)
    meta = {"backend": "stochastic", "params": params, "kernel": spec, "mc": config, "c0": 1.0}

    worst = float(np.max(stats.stderr))
    if config.target_stderr is not None and worst > config.target_stderr:
        message = "standard error {:.3e} exceeds target {:.3e}; increase n_traj".format(worst, config.target_stderr)
        logger.warning("mc_dephasing_average(): %s", message)
        meta["warning"] = message

    return CoherenceCurve(stats.grid.t0, stats.grid.dt, stats.mean, Container(meta), stats.stderr)
