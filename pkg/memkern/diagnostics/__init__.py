from .tau_dec import extract_tau_dec, first_crossing
from .state import (
    DephasingState,
    DiagnosticsSeries,
    SignatureTimes,
    diagnostics_along_curve,
    entropy,
    purity,
    signature_times,
)
from .inference import (
    REGIME_CROSSOVER,
    REGIME_MARKOVIAN,
    REGIME_NON_MARKOVIAN,
    FitWindow,
    InferenceResult,
    classify_regime,
    curvature_infer_alpha0,
)
