import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from memkern.base import Container
from memkern.constants import COHERENCE_TOLERANCE
from memkern.exceptions import DataError


@dataclass(frozen=True)
class TimeGrid:
    """
    Uniform sampling grid t_i = t0 + i * dt, i = 0..n-1
    """

    dt: float
    n: int
    t0: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.dt) or self.dt <= 0:
            raise ValueError("TimeGrid(): dt must be positive and finite, got {!r}".format(self.dt))
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("TimeGrid(): n must be a positive integer, got {!r}".format(self.n))
        if not math.isfinite(self.t0):
            raise ValueError("TimeGrid(): t0 must be finite")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def span(cls, dt: float, t_final: float, t0: float = 0.0) -> "TimeGrid":
        """
        Grid covering [t0, t_final] with spacing dt; the last sample is the first at or beyond t_final
        """
        if t_final < t0:
            raise ValueError("TimeGrid.span(): t_final must not precede t0")
        n = int(math.ceil((t_final - t0) / dt - 1e-9)) + 1
        return cls(dt=dt, n=n, t0=t0)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def t_final(self) -> float:
        return self.t0 + self.dt * (self.n - 1)


@dataclass(frozen=True, eq=False)
class CoherenceCurve:
    """
    Uniformly sampled complex coherence C(t_i) with provenance metadata

    meta carries at least 'backend'; stderr is set by Monte Carlo backends
    """

    t0: float
    dt: float
    samples: np.ndarray
    meta: Container = field(default_factory=Container)
    stderr: Optional[np.ndarray] = None

    def __post_init__(self):
        if not math.isfinite(self.dt) or self.dt <= 0:
            raise ValueError("CoherenceCurve(): dt must be positive and finite")
        samples = np.array(self.samples, dtype=complex).reshape(-1)
        if samples.size == 0:
            raise ValueError("CoherenceCurve(): samples must be non-empty")
        if not np.all(np.isfinite(samples)):
            raise DataError("CoherenceCurve(): samples must be finite")
        if abs(samples[0]) <= 1.0:
            magnitude = np.abs(samples)
            bad = np.nonzero(magnitude > 1.0 + COHERENCE_TOLERANCE)[0]
            if bad.size:
                i = int(bad[0])
                raise DataError(
                    "CoherenceCurve(): |C| = {:.12g} exceeds 1 at sample {} (t={:.6g})".format(
                        magnitude[i], i, self.t0 + i * self.dt
                    )
                )
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

        if not isinstance(self.meta, Container):
            object.__setattr__(self, "meta", Container(self.meta))

        if self.stderr is not None:
            stderr = np.array(self.stderr, dtype=float).reshape(-1)
            if stderr.shape != samples.shape:
                raise ValueError("CoherenceCurve(): stderr must match samples")
            stderr.setflags(write=False)
            object.__setattr__(self, "stderr", stderr)

    def __len__(self):
        return self.samples.size

    @property
    def grid(self) -> TimeGrid:
        return TimeGrid(dt=self.dt, n=len(self), t0=self.t0)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self))

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.samples)

    @property
    def c0(self) -> complex:
        return complex(self.samples[0])

    @property
    def backend(self) -> str:
        return self.meta.get("backend", "")

    def normalized(self) -> np.ndarray:
        """
        |C(t)| / |C(t0)|
        """
        start = abs(self.samples[0])
        if start == 0:
            raise DataError("CoherenceCurve.normalized(): |C(t0)| is zero")
        return self.magnitude / start

    def scaled(self, factor: complex) -> "CoherenceCurve":
        stderr = None if self.stderr is None else self.stderr * abs(factor)
        return CoherenceCurve(self.t0, self.dt, self.samples * factor, self.meta, stderr)

    def with_meta(self, **extra) -> "CoherenceCurve":
        return CoherenceCurve(self.t0, self.dt, self.samples, self.meta.merged(extra), self.stderr)
