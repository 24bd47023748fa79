import logging
from dataclasses import dataclass, field

import numpy as np

from memkern.constants import HERMITIAN_TOLERANCE, POINTER_SCALE, TRACE_TOLERANCE
from memkern.exceptions import DataError
from memkern.kernel import SystemParams

from .config import PseudomodeConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Hermitian, unit-trace state of the qubit (x) truncated mode

    Basis index = s * levels + n with s = 0 for |L>, 1 for |R>
    """

    entries: np.ndarray
    levels: int = field(default=0)

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DataError("DensityMatrix(): entries must be a square matrix")
        if np.max(np.abs(entries - entries.conj().T)) > HERMITIAN_TOLERANCE:
            raise DataError("DensityMatrix(): entries are not Hermitian")
        if abs(np.trace(entries) - 1.0) > TRACE_TOLERANCE:
            raise DataError("DensityMatrix(): trace {:.12g} differs from 1".format(np.trace(entries).real))
        levels = self.levels or entries.shape[0] // 2
        if entries.shape[0] % levels:
            raise DataError("DensityMatrix(): dimension does not factor into system x {} levels".format(levels))
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "levels", levels)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def system_dim(self) -> int:
        return self.dim // self.levels

    def purity(self) -> float:
        return float(np.sum(np.abs(self.entries) ** 2))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries)[0])

    def reduced_system(self) -> np.ndarray:
        """
        Partial trace over the mode
        """
        s = self.system_dim
        return np.einsum("injn->ij", self.entries.reshape(s, self.levels, s, self.levels))

    def coherence(self) -> complex:
        """
        <L| rho_S |R>
        """
        return complex(self.reduced_system()[0, 1])

    def populations(self):
        reduced = self.reduced_system()
        return float(reduced[0, 0].real), float(reduced[1, 1].real)

    def mode_occupation(self) -> np.ndarray:
        """
        Reduced mode populations, used to judge truncation
        """
        s = self.system_dim
        reduced = np.einsum("imin->mn", self.entries.reshape(s, self.levels, s, self.levels))
        return np.real(np.diag(reduced))


class Liouvillian:
    """
    Lindblad generator rho' = -(i/hbar)[H, rho] + L rho L^+ - 1/2 {L^+ L, rho}

    Stored as the non-Hermitian drift G = -(i/hbar) H - 1/2 L^+ L so that rho' = G rho + rho G^+ + L rho L^+
    """

    def __init__(self, hamiltonian: np.ndarray, jump: np.ndarray, hbar: float, levels: int, system_dim: int):
        self.hamiltonian = hamiltonian
        self.jump = jump
        self.hbar = hbar
        self.levels = levels
        self.system_dim = system_dim
        self._jump_dag = jump.conj().T
        self._drift = (-1j / hbar) * hamiltonian - 0.5 * (self._jump_dag @ jump)
        self._drift_dag = self._drift.conj().T

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        return self._drift @ rho + rho @ self._drift_dag + self.jump @ rho @ self._jump_dag

    def rhs(self, _, y: np.ndarray) -> np.ndarray:
        d = self.dim
        return self(y.reshape(d, d)).reshape(-1)


def annihilation(levels: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, levels, dtype=float)), k=1).astype(complex)


def _assemble(params: SystemParams, config: PseudomodeConfig, levels: int) -> Liouvillian:
    b = annihilation(levels)
    pointer = params.a * POINTER_SCALE
    x = np.diag([pointer, -pointer]).astype(complex)
    force = params.hbar * config.g * (b + b.conj().T)
    hamiltonian = np.kron(x, force)
    jump = np.sqrt(config.kappa) * np.kron(np.eye(2), b)
    logger.debug("pseudomode generator: levels=%d g=%.6g kappa=%.6g", levels, config.g, config.kappa)
    return Liouvillian(hamiltonian, jump, params.hbar, levels, 2)


def build_generator(params: SystemParams, config: PseudomodeConfig) -> Liouvillian:
    """
    Qubit (x) damped mode with H = x (x) hbar g (b + b^+), pointer eigenvalues +/- a/sqrt(2), L = sqrt(kappa) b

    No free system Hamiltonian; mode levels 0..n_max
    """
    if config.n_max < 2:
        raise ValueError("build_generator(): n_max must be at least 2, got {}".format(config.n_max))
    return _assemble(params, config, config.n_max + 1)


def build_tier_one_generator(params: SystemParams, config: PseudomodeConfig) -> Liouvillian:
    """
    Mode truncated to levels {0, 1}

    The coherence of this truncation obeys the OU closure ODE exactly
    """
    return _assemble(params, config, 2)


def build_mode_generator(config: PseudomodeConfig, hbar: float = 1.0) -> Liouvillian:
    """
    Damped mode alone, no system
    """
    levels = config.n_max + 1
    b = annihilation(levels)
    return Liouvillian(np.zeros((levels, levels), dtype=complex), np.sqrt(config.kappa) * b, hbar, levels, 1)


def initial_state(generator: Liouvillian) -> DensityMatrix:
    """
    (|L> + |R>)(<L| + <R|)/2 (x) |0><0|, or the bare vacuum for a mode-only generator
    """
    vacuum = np.zeros(generator.levels, dtype=complex)
    vacuum[0] = 1.0
    if generator.system_dim == 1:
        psi = vacuum
    else:
        psi = np.kron(np.array([1.0, 1.0]) / np.sqrt(2.0), vacuum)
    return DensityMatrix(np.outer(psi, psi.conj()), generator.levels)
