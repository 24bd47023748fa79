import math

MEMKERN_VERSION = ["0", "1", "0"]

# pointer eigenvalues are +/- a * POINTER_SCALE
POINTER_SCALE = 1.0 / math.sqrt(2.0)

# decoherence-functional quadrature
QUAD_EPSABS = 1e-10
QUAD_EPSREL = 1e-9
QUAD_LIMIT = 200

# kernel weight quadrature
WEIGHT_EPSABS = 1e-13
WEIGHT_EPSREL = 1e-11

# quadratic regime horizon, as a fraction of tau_c
SHORT_TIME_HORIZON = 0.01

# ou closure ODE
ODE_RTOL = 1e-10
ODE_ATOL = 1e-12
ODE_RESOLUTION = 50  # dt <= tau_c / ODE_RESOLUTION

# pseudomode
PSEUDOMODE_RTOL = 1e-9
PSEUDOMODE_ATOL = 1e-11
PSEUDOMODE_N_MAX = 12
# coherence of the equal superposition the mode starts from
PSEUDOMODE_C0 = 0.5
PSEUDOMODE_N_CEILING = 64
TRUNCATION_TOLERANCE = 1e-4
HERMITIAN_TOLERANCE = 1e-9
TRACE_TOLERANCE = 1e-9
POSITIVITY_WARN = 1e-9
POSITIVITY_ERROR = 1e-6

# stochastic
MC_MIN_TRAJECTORIES = 100
MC_RESOLUTION = 20  # dt <= tau_c / MC_RESOLUTION
MC_BLOCK_SIZE = 1000

# inference
INFER_PHI_THRESHOLD = 0.01
INFER_MIN_SAMPLES = 5
INFER_WINDOW_DECADE = 10.0
INFER_RESIDUAL_RATIO = 10.0

# scaling
FIT_MIN_POINTS = 4
FIT_MIN_DECADES = 1.5

# curve invariants
COHERENCE_TOLERANCE = 1e-9

# csv
CSV_FLOAT_FORMAT = ".17g"


def get_version():
    return ".".join(MEMKERN_VERSION)
