"""Global limits and numeric tolerances shared by every module."""

MAX_ARITY = 24
# n + kappa + 2 for the largest supported instances; also bounds zero_state.
MAX_QUBITS = 30
# Stage introspection keeps whole statevectors around.
MAX_INSPECT_ARITY = 12

INVARIANT_TOL = 1e-12
EQUALITY_TOL = 1e-9
# Exact-mode cutoff for "C != 0" and for classification.
NONZERO_TOL = 1e-9
# Sampled mode: decisions are made at this many standard errors.
SIGMA_MULTIPLIER = 3.0
# Relative slack (times N) for the rounded vs unrounded M_c in exact mode.
EXACT_ROOT_TOL = 1e-6

DEFAULT_SHOTS = 4096
DEFAULT_SEED = 0
