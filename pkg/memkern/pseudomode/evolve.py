import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from memkern.base import Container
from memkern.constants import (
    HERMITIAN_TOLERANCE,
    POSITIVITY_ERROR,
    POSITIVITY_WARN,
    PSEUDOMODE_ATOL,
    PSEUDOMODE_N_CEILING,
    PSEUDOMODE_RTOL,
    TRACE_TOLERANCE,
    TRUNCATION_TOLERANCE,
)
from memkern.curve import CoherenceCurve, TimeGrid
from memkern.exceptions import IntegrationError, ResolutionError, TruncationError
from memkern.kernel import KernelSpec, SystemParams

from .config import PseudomodeConfig
from .generator import DensityMatrix, Liouvillian, build_generator, build_mode_generator, initial_state

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PseudomodeRun:
    """
    Snapshots of an evolution on a uniform grid
    """

    grid: TimeGrid
    states: List[DensityMatrix]
    meta: Container = field(default_factory=Container)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times


@dataclass(frozen=True)
class TruncationCertificate:
    converged: bool
    n_used: int
    sup_delta: float
    history: Tuple[Tuple[int, int, float], ...] = ()

    def to_text(self) -> str:
        lines = [
            "converged={}".format(str(self.converged).lower()),
            "n_used={}".format(self.n_used),
            "sup_delta={:.6e}".format(self.sup_delta),
        ]
        for n, n2, delta in self.history:
            lines.append("compare n_max={} vs {}: {:.6e}".format(n, n2, delta))
        return "\n".join(lines)


def _propagate(generator: Liouvillian, start: np.ndarray, times: np.ndarray) -> np.ndarray:
    """
    Integrate d/dt X = L(X) from times[0] = 0; returns array of shape (len(times), dim, dim)
    """
    d = generator.dim
    if times.size == 1:
        return start.reshape(1, d, d).copy()
    sol = solve_ivp(
        generator.rhs,
        (0.0, float(times[-1])),
        start.astype(complex).reshape(-1),
        method="DOP853",
        t_eval=times,
        rtol=PSEUDOMODE_RTOL,
        atol=PSEUDOMODE_ATOL,
    )
    if not sol.success:
        raise IntegrationError("pseudomode evolve(): {}".format(sol.message), float(sol.t[-1]) if sol.t.size else 0.0)
    logger.debug("pseudomode evolve(): dim=%d nfev=%d", d, sol.nfev)
    return sol.y.T.reshape(times.size, d, d)


def evolve(generator: Liouvillian, initial: Optional[DensityMatrix], grid: TimeGrid) -> PseudomodeRun:
    """
    Integrate the master equation and check every snapshot

    :param generator: Lindblad generator
    :param initial: starting state, default superposition (x) vacuum
    :param grid: grid starting at t0 = 0
    :return: PseudomodeRun
    """
    if grid.t0 != 0:
        raise ValueError("evolve(): grid must start at t0 = 0")
    if initial is None:
        initial = initial_state(generator)
    if initial.dim != generator.dim:
        raise ValueError("evolve(): initial state dimension {} != generator {}".format(initial.dim, generator.dim))

    raw = _propagate(generator, initial.entries, grid.times)
    states = [initial]
    warnings = 0
    min_eig = 0.0
    for i in range(1, grid.n):
        t = grid.t0 + i * grid.dt
        rho = raw[i]
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOLERANCE:
            raise IntegrationError("evolve(): state lost Hermiticity", t)
        rho = 0.5 * (rho + rho.conj().T)
        if abs(np.trace(rho) - 1.0) > TRACE_TOLERANCE:
            raise IntegrationError("evolve(): trace drifted to {:.12g}".format(np.trace(rho).real), t)
        state = DensityMatrix(rho, generator.levels)
        lowest = state.min_eigenvalue()
        min_eig = min(min_eig, lowest)
        if lowest < -POSITIVITY_ERROR:
            raise TruncationError(
                "evolve(): eigenvalue {:.3e} at t={:.6g}; truncation too small, increase n_max".format(lowest, t)
            )
        if lowest < -POSITIVITY_WARN:
            warnings += 1
        states.append(state)

    if warnings:
        logger.warning(
            "evolve(): %d snapshots with eigenvalues below -%.0e (lowest %.3e)", warnings, POSITIVITY_WARN, min_eig
        )

    meta = {"levels": generator.levels, "min_eigenvalue": min_eig, "positivity_warnings": warnings}
    return PseudomodeRun(grid, states, Container(meta))


def extract_coherence(run: PseudomodeRun) -> CoherenceCurve:
    """
    <L| Tr_mode(rho) |R> for every snapshot; c0 = 1/2 for the standard initial state
    """
    samples = np.array([state.coherence() for state in run.states])
    meta = run.meta.merged({"backend": "pseudomode", "c0": complex(samples[0])})
    return CoherenceCurve(run.grid.t0, run.grid.dt, samples, meta)


def _run_coherence(params: SystemParams, config: PseudomodeConfig, grid: TimeGrid, n_max: int) -> CoherenceCurve:
    generator = build_generator(params, config.with_n_max(n_max))
    return extract_coherence(evolve(generator, None, grid))


def _certify(
    params: SystemParams, config: PseudomodeConfig, grid: TimeGrid, tolerance: float, escalate: bool
) -> Tuple[TruncationCertificate, CoherenceCurve]:
    if grid.dt > config.tau_c:
        raise ResolutionError(
            "truncation_converged(): dt={:.6g} exceeds the mode memory time {:.6g}".format(grid.dt, config.tau_c)
        )

    n = config.n_max
    curve = _run_coherence(params, config, grid, n)
    history = []
    while True:
        if n >= PSEUDOMODE_N_CEILING:
            raise TruncationError(
                "truncation_converged(): no convergence up to n_max={} (last sup delta {:.3e})".format(
                    n, history[-1][2] if history else float("nan")
                )
            )
        # the last step compares against the ceiling itself
        n2 = min(2 * n, PSEUDOMODE_N_CEILING)
        curve2 = _run_coherence(params, config, grid, n2)
        delta = float(np.max(np.abs(curve.samples - curve2.samples)))
        history.append((n, n2, delta))
        logger.debug("truncation: n_max=%d vs %d sup delta %.3e", n, n2, delta)
        if delta <= tolerance or not escalate:
            cert = TruncationCertificate(delta <= tolerance, n, delta, tuple(history))
            return cert, curve
        n, curve = n2, curve2


def truncation_converged(
    params: SystemParams,
    config: PseudomodeConfig,
    grid: TimeGrid = None,
    tolerance: float = None,
    escalate: bool = True,
) -> TruncationCertificate:
    """
    Compare coherence at n_max and min(2 n_max, 64); with escalate, keep doubling until converged

    :param params: system parameters
    :param config: pseudomode configuration; n_max is the starting truncation
    :param grid: optional grid, defaults to config.grid
    :param tolerance: sup-norm threshold on |delta C|, default 1e-4
    :param escalate: if False, perform a single comparison
    :return: TruncationCertificate
    """
    cert, _ = _certify(params, config, grid or config.grid, tolerance or TRUNCATION_TOLERANCE, escalate)
    return cert


def simulate_certified(params: SystemParams, config: PseudomodeConfig, grid: TimeGrid = None) -> CoherenceCurve:
    """
    Coherence at the smallest certified truncation, with the certificate in the metadata
    """
    grid = grid or config.grid
    cert, curve = _certify(params, config, grid, TRUNCATION_TOLERANCE, True)
    return curve.with_meta(
        params=params,
        kernel=KernelSpec.ou(config.tau_c),
        config=config.with_n_max(cert.n_used),
        certificate=cert,
    )


def mode_force_correlation(config: PseudomodeConfig, times: np.ndarray, hbar: float = 1.0) -> np.ndarray:
    """
    <F(t) F(0)> of F = hbar g (b + b^+) in the vacuum, by quantum regression on the mode-only generator
    """
    times = np.asarray(times, dtype=float)
    if times.size == 0 or times[0] != 0:
        raise ValueError("mode_force_correlation(): times must start at 0")
    generator = build_mode_generator(config, hbar)
    b = generator.jump / np.sqrt(config.kappa)
    force = hbar * config.g * (b + b.conj().T)
    vacuum = np.zeros((generator.levels, generator.levels), dtype=complex)
    vacuum[0, 0] = 1.0
    evolved = _propagate(generator, force @ vacuum, times)
    return np.einsum("ij,tji->t", force, evolved)
