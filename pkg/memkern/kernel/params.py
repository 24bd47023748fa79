import dataclasses
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SystemParams:
    """
    Physical constants of the dephasing model

    a: pointer-state separation
    hbar: reduced Planck constant
    D: integrated noise strength (units of alpha * time)
    """

    a: float = 1.0
    hbar: float = 1.0
    D: float = 1.0

    def __post_init__(self):
        for name in ("a", "hbar", "D"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError("SystemParams(): '{}' must be a real number".format(name))
            if not math.isfinite(value) or value <= 0:
                raise ValueError("SystemParams(): '{}' must be positive and finite, got {!r}".format(name, value))
            object.__setattr__(self, name, float(value))

    @property
    def coupling(self) -> float:
        """
        Prefactor a^2/hbar^2 of the decoherence functional
        """
        return self.a**2 / self.hbar**2

    def replace(self, **changes) -> "SystemParams":
        return dataclasses.replace(self, **changes)

    def asdict(self) -> dict:
        return dataclasses.asdict(self)
