"""Numerical constants and defaults used across umbraq."""
import numpy as np



SUITE_VERSION = "1.0"

# q parameter
Q_MAX_DEFAULT = 0.9999
DEFAULT_Q_GRID = (0.4, 0.6, 0.9)

# tolerances
REL_TOL_DEFAULT = 1e-12
ABS_TOL_DEFAULT = 1e-14
MAX_PRODUCT_FACTORS = 200_000
MAX_SERIES_TERMS = 10_000
MAX_EVALUATIONS = 200_000
ENV_MAX_FACTORS = "UMBRAQ_MAX_FACTORS"

# product evaluation: factors are multiplied one by one until q**(n + a) drops to this value,
# the rest of the product is summed through its logarithmic series.
PRODUCT_DIRECT_THRESHOLD = 0.5
LOG_TAIL_TARGET = 1e-17

# Lanczos approximation, g = 7
LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
HALF_LOG_TWO_PI = 0.9189385332046727

# quadrature
LAPLACE_CUTOFF = 50.0
LAGUERRE_ORDERS = (32, 64)
QUAD_NODES_PER_INTERVAL = 21
TAIL_VIOLATION_FACTOR = 10.0
ALGEBRAIC_CUTOFF_START = 4.0
ALGEBRAIC_CUTOFF_MAX = 1e8
OSCILLATORY_SAMPLES = 2000

# umbral evaluation
EULER_LOG_POCHHAMMER_FLOOR = -36.0   # below this log (q;q)_inf the Euler route is not tried
EULER_MAX_TERMS = 4000
SERIES_ROUNDING_FACTOR = 8.0

# jackson
JACKSON_ZERO_GUARD = 1e-8
FD_STEP = 1e-5
SMALL_ARGUMENT = 0.1

# verification suite
VERIFY_INNER_REL_TOL = 1e-8
VERIFY_INNER_ABS_TOL = 1e-10
VERIFY_OUTER_REL_TOL = 1e-7
VERIFY_OUTER_ABS_TOL = 1e-9
SMOOTH_IDENTITY_TOL = 1e-5
OSCILLATORY_IDENTITY_TOL = 1e-4
EIGEN_RESIDUAL_TOL = 1e-7
FD_EIGEN_RESIDUAL_TOL = 1e-5
EXACT_RESIDUAL_TOL = 1e-12
PRODUCT_IDENTITY_TOL = 1e-9
TSALLIS_IDENTITY_TOL = 1e-8
DERIVATIVE_IDENTITY_TOL = 1e-6
EXACT_TOL = 5e-324   # smallest positive double: only a literal zero passes
CONTINUITY_JUMP = 0.1
GAUSSIAN_Q_MAX = 0.95
OSCILLATORY_Q_MAX = 0.9
POWER_INTEGRAL_ORDERS = (2, 3, 4)
TSALLIS_Q_GRID = (0.25, 0.5, 1.0)
FRESNEL_SAMPLES = 400
HERMITE_MAX_ORDER = 10
GAUSSIAN_CUTOFF_CAP = 1e4

# output
CSV_SIGNIFICANT_DIGITS = 12
SVG_HASH_SALT = "umbraq"

EPS = float(np.finfo(float).eps)
