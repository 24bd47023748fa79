from .ou import (
    REGIME_CRITICAL,
    REGIME_OVERDAMPED,
    REGIME_UNDERDAMPED,
    OuOdeCoefficients,
    markovian_limit_curve,
    ou_ode_analytic,
    ou_ode_solve,
)
