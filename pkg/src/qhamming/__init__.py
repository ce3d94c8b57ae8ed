"""Simulated entanglement-based Hamming distance between Boolean black-boxes."""
from .analysis import (
    Case,
    Category,
    ConcurrenceReading,
    HammingReport,
    categorize_from_concurrence,
    compare_with_classical,
    decide_hamming,
    solve_mc,
)
from .boolfn import (
    BooleanFunction,
    WalshPair,
    classical_hamming_textbook,
    classical_joint_ones,
    count_ones,
    from_truth_table,
    parse_expression,
    random_function,
    walsh_coefficients,
)
from .circuit import (
    CircuitLayout,
    GateLog,
    apply_u_lambda,
    build_u_kappa,
    run_categorization,
    run_proposed_algorithm,
    state_after_stage,
)
from .simulator import StateVector, zero_state

__version__ = "0.1.0"
